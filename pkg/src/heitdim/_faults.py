"""Test-only fault injection: deliberately broken versions of core primitives.

Used to confirm that the check suites notice when something underneath is wrong.
"""

from __future__ import annotations

from contextlib import contextmanager
from unittest import mock

from . import dimension, ideals, spectra, zar
from .lattice import Lattice

FAULTS = ("leq", "jacobson", "verify_collapse")


def _bad_leq(self, a: int, b: int) -> bool:
    # forgets the first model, so the order becomes a coarser preorder
    return not (a & ~b & ~1)


def _bad_jacobson(J):
    # the radical of J replaced by J itself
    return ideals.ideal_of_members(J.host, J.members())


def _bad_verify_collapse(A, xs, as_, ms, y=None) -> bool:
    return True


def _clear() -> None:
    dimension.clear_caches()
    zar.clear_caches()
    spectra._hdim_oracle_key.cache_clear()


@contextmanager
def inject(name: str | None):
    if name is None:
        yield
        return
    targets = {
        "leq": mock.patch.object(Lattice, "leq_mask", _bad_leq),
        "jacobson": mock.patch.object(ideals, "jacobson", _bad_jacobson),
        "verify_collapse": mock.patch.object(zar, "verify_collapse", _bad_verify_collapse),
    }
    if name not in targets:
        raise ValueError(f"unknown fault {name!r}; choose from {', '.join(FAULTS)}")
    _clear()
    try:
        with targets[name]:
            yield
    finally:
        _clear()
