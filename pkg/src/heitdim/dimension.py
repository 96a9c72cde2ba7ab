"""Krull and Heitmann boundaries, and the deciders for Kdim, Jdim and Hdim.

Tuple quantification runs over a generator system (the presentation
generators by default), witness search over all enumerated elements.
Every order test goes through ``Lattice.leq_mask`` and every Jacobson radical
through ``ideals.jacobson`` so that test hooks can reach them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import ideals
from .heyting import brouwer_difference_mask, implication_mask
from .ideals import FilterHandle, IdealHandle, QuotientMap
from .lattice import Element, Lattice, LatticeError

STRATEGIES = {"global": "global", "global-2c": "global", "2c": "global",
              "upper": "upper", "upper-2a": "upper", "2a": "upper",
              "lower": "lower", "lower-2b": "lower", "2b": "lower",
              "recursive": "recursive", "iterated": "iterated"}


@dataclass
class DimensionVerdict:
    bound: int
    holds: bool | None
    strategy: str = "global"
    witness: list | None = None
    counterexample: tuple | None = None
    note: str = ""

    def __bool__(self):
        return bool(self.holds)

    def to_json(self) -> dict:
        out = {"bound": self.bound, "holds": self.holds, "strategy": self.strategy}
        if self.counterexample is not None:
            out["counterexample"] = [str(x) for x in self.counterexample]
        if self.witness is not None:
            out["witness"] = [self._witness_json(w) for w in self.witness]
        if self.note:
            out["note"] = self.note
        return out

    @staticmethod
    def _witness_json(w) -> dict:
        entry = {"xs": [str(x) for x in w[0]], "as": [str(a) for a in w[1]]}
        if len(w) > 2:
            entry["ms"] = [int(m) for m in w[2]]
        return entry


_cache: dict = {}
_cache_lock = threading.Lock()


def clear_caches() -> None:
    with _cache_lock:
        _cache.clear()


def _cached(key, compute):
    with _cache_lock:
        if key in _cache:
            return _cache[key]
    val = compute()
    with _cache_lock:
        _cache.setdefault(key, val)
    return val


def _system(T: Lattice, generators) -> list[Element]:
    if generators is None:
        return [T.gen(g) for g in T.generators]
    return [T.coerce(g) for g in generators]


def _label(x: Element) -> str:
    return str(x)


# boundary ideals and filters

def annihilator_top(T: Lattice, x: int) -> int:
    """Top of ``(0 : x)``."""
    top = 0
    for y in T.masks():
        if T.leq_mask(x & y, 0):
            top |= y
    return top


def krull_boundary_ideal(T: Lattice, x) -> IdealHandle:
    """``z`` with ``z <= x | y`` for some ``y`` disjoint from ``x``."""
    x = T.coerce(x)
    ys = [y for y in T.masks() if T.leq_mask(x.mask & y, 0)]
    ann = 0
    for y in ys:
        ann |= y
    return IdealHandle(T, lambda z: any(T.leq_mask(z, x.mask | y) for y in ys),
                       [x, T.from_mask(ann)])


def krull_boundary_filter(T: Lattice, x) -> FilterHandle:
    """``z = u & v`` with ``u >= x`` and ``v | x = 1``."""
    x = T.coerce(x)
    masks = T.masks()
    us = [u for u in masks if T.leq_mask(x.mask, u)]
    vs = [v for v in masks if T.leq_mask(T.full, v | x.mask)]
    members = {u & v for u in us for v in vs}
    low = T.full
    for v in vs:
        low &= v
    return FilterHandle(T, lambda z: z in members, [x, T.from_mask(low)])


def upper_boundary(T: Lattice, x) -> tuple[Lattice, QuotientMap]:
    return ideals.quotient(T, krull_boundary_ideal(T, x).generators)


def lower_boundary(T: Lattice, x) -> tuple[Lattice, QuotientMap]:
    return ideals.quotient(T, [], krull_boundary_filter(T, x).generators)


def heitmann_boundary_ideal(T: Lattice, x) -> IdealHandle:
    """``z <= x | u`` for some ``u`` with ``x & u`` in the Jacobson radical of 0."""
    x = T.coerce(x)
    j0 = ideals.jacobson(ideals.ideal_from(T))
    us = [u for u in T.masks() if j0.contains_mask(x.mask & u)]
    top = 0
    for u in us:
        top |= u
    return IdealHandle(T, lambda z: any(T.leq_mask(z, x.mask | u) for u in us),
                       [x, T.from_mask(top)])


def heitmann_boundary(T: Lattice, x) -> tuple[Lattice, QuotientMap]:
    return ideals.quotient(T, heitmann_boundary_ideal(T, x).generators)


def heitmann_preorder(T: Lattice) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` such that ``a | x = 1`` implies ``b | x = 1`` for all x."""
    masks = T.masks()
    up = {a: frozenset(x for x in masks if T.leq_mask(T.full, a | x)) for a in masks}
    return [(a, b) for a in masks for b in masks if up[a] <= up[b]]


def heitmann_lattice(T: Lattice) -> tuple[Lattice, QuotientMap]:
    return ideals.quotient_by_preorder(T, heitmann_preorder(T))


# complementary sequences

def _max_below(T: Lattice, x: int, v: int) -> int:
    """Greatest a with ``a & x <= v``."""
    a = 0
    for m in T.masks():
        if T.leq_mask(m & x, v):
            a |= m
    return a


def complementary_sequence(T: Lattice, xs: Sequence, y=None) -> list[Element] | None:
    """a_0..a_l with ``a_0 & x_0 <= 0``, ``a_i & x_i <= a_(i-1) | x_(i-1)`` and
    ``y <= a_l | x_l`` (y defaults to 1), or None when there is none.

    Taking each a_i as large as possible is enough: the constraints only get
    weaker as the previous a grows.
    """
    xs = [T.coerce(x).mask for x in xs]
    target = T.full if y is None else T.coerce(y).mask
    if not xs:
        return [] if T.leq_mask(target, 0) else None
    v, out = 0, []
    for x in xs:
        a = _max_below(T, x, v)
        out.append(a)
        v = a | x
    if not T.leq_mask(target, v):
        return None
    return [T.from_mask(a) for a in out]


def iterated_krull_membership(T: Lattice, y, xs: Sequence) -> bool:
    return complementary_sequence(T, xs, y) is not None


def check_complementary(T: Lattice, xs: Sequence, as_: Sequence, y=None) -> bool:
    xs = [T.coerce(x).mask for x in xs]
    as_ = [T.coerce(a).mask for a in as_]
    if len(xs) != len(as_):
        return False
    prev = 0
    for x, a in zip(xs, as_):
        if not T.leq_mask(a & x, prev):
            return False
        prev = a | x
    target = T.full if y is None else T.coerce(y).mask
    return T.leq_mask(target, prev)


def _global_search(T: Lattice, ell: int, S: list[Element]) -> tuple | None:
    """First tuple over S (as masks) without a complementary sequence."""
    memo: dict[tuple[int, int], tuple | None] = {}
    below: dict[tuple[int, int], int] = {}

    def step(v, x):
        if (x, v) not in below:
            below[(x, v)] = _max_below(T, x, v)
        return below[(x, v)] | x

    def dfs(v, depth):
        key = (v, depth)
        if key in memo:
            return memo[key]
        res = None
        for x in S:
            nv = step(v, x.mask)
            if depth == ell:
                if not T.leq_mask(T.full, nv):
                    res = (x,)
                    break
            else:
                sub = dfs(nv, depth + 1)
                if sub is not None:
                    res = (x,) + sub
                    break
        memo[key] = res
        return res

    return dfs(0, 0)


def _kdim_recursive(T: Lattice, ell: int, side: str, labels: tuple | None) -> tuple | None:
    """Counterexample path through iterated boundaries, or None."""
    if T.is_trivial():
        return None
    if ell < 0:
        return ()

    def compute():
        S = _system(T, labels)
        for x in S:
            B = (upper_boundary if side == "upper" else lower_boundary)(T, x)[0]
            sub = _kdim_recursive(B, ell - 1, side, labels)
            if sub is not None:
                return (_label(x),) + sub
        return None

    return _cached(("k", side, T.key, ell, labels), compute)


def _labels_of(T: Lattice, generators) -> tuple | None:
    if generators is None:
        return None
    return tuple(_label(T.coerce(g)) for g in generators)


def kdim_leq(T: Lattice, ell: int, strategy: str = "global", generators=None,
             witness: bool = False) -> DimensionVerdict:
    """Decide ``Kdim T <= ell``."""
    if ell < -1:
        raise LatticeError("dimension bound must be at least -1")
    strat = STRATEGIES.get(strategy)
    if strat not in ("global", "upper", "lower"):
        raise LatticeError(f"unknown strategy {strategy!r}")
    if ell == -1:
        ok = T.is_trivial()
        return DimensionVerdict(ell, ok, strat, [] if witness and ok else None,
                                None if ok else (), "" if ok else "1 != 0")
    if T.is_trivial():
        return DimensionVerdict(ell, True, strat, [] if witness else None)
    S = _system(T, generators)
    if strat == "global":
        key = ("g", T.key, ell, tuple(x.mask for x in S))
        ce = _cached(key, lambda: _global_search(T, ell, S))
        ce = None if ce is None else tuple(_label(x) for x in ce)
    else:
        # generator systems stay valid in quotients, read by label
        ce = _kdim_recursive(T, ell, strat, _labels_of(T, generators))
    v = DimensionVerdict(ell, ce is None, strat, None, ce)
    if ce is not None:
        v.note = "no complementary sequence for this tuple (exhaustive search)"
    elif witness:
        v.witness = []
        for xs in product(S, repeat=ell + 1):
            seq = complementary_sequence(T, xs)
            if seq is None:
                raise LatticeError("strategies disagree on a witness")
            v.witness.append((xs, seq))
    return v


def heyting_chain_value(T: Lattice, xs: Sequence) -> Element:
    """``x_l | (x_l -> (... (x_1 | (x_1 -> (x_0 | not x_0)))))``."""
    acc = 0
    for x in (T.coerce(x).mask for x in xs):
        acc = x | implication_mask(T, x, acc)
    return T.from_mask(acc)


def brouwer_chain_value(T: Lattice, xs: Sequence) -> Element:
    """``x_0 & (x_0 - (x_1 & (x_1 - (... (x_l & (1 - x_l))))))``."""
    acc = T.full
    for x in reversed([T.coerce(x).mask for x in xs]):
        acc = x & brouwer_difference_mask(T, acc, x)
    return T.from_mask(acc)


# Heitmann dimensions

def jdim_leq(T: Lattice, ell: int, strategy: str = "global", witness: bool = False) -> DimensionVerdict:
    """``Kdim He(T) <= ell``; the generators of T still generate He(T)."""
    He = heitmann_lattice(T)[0]
    v = kdim_leq(He, ell, strategy, witness=witness)
    v.strategy = f"heitmann-lattice/{v.strategy}"
    return v


def _hdim_recursive(T: Lattice, ell: int, labels: tuple | None) -> tuple | None:
    if T.is_trivial():
        return None
    if ell < 0:
        return ()

    def compute():
        for x in _system(T, labels):
            B = heitmann_boundary(T, x)[0]
            sub = _hdim_recursive(B, ell - 1, labels)
            if sub is not None:
                return (_label(x),) + sub
        return None

    return _cached(("h", T.key, ell, labels), compute)


def heitmann_step(T: Lattice, members: frozenset[int], x: int) -> frozenset[int]:
    """Members of the next iterated Heitmann boundary ideal.

    ``members`` is the current ideal a.  In ``T/(a = 0)`` an element w equals
    1 iff ``w | a' = 1`` for some a' in a, so the Jacobson radical of 0 there
    pulls back to the z with: ``(z & x) | u`` comaximal with a forces u
    comaximal with a.  The next ideal is generated by ``x | z | a'``.
    """
    masks = T.masks()
    full = T.full
    alist = list(members)
    comax = {w: any(T.leq_mask(full, w | a) for a in alist) for w in masks}
    good = [z for z in masks
            if all(comax[u] for u in masks if comax[(z & x) | u])]
    tops = {x | z | a for z in good for a in alist}
    return frozenset(y for y in masks if any(T.leq_mask(y, t) for t in tops))


def iterated_heitmann_ideal(T: Lattice, xs: Sequence) -> frozenset[int]:
    cur = frozenset(m for m in T.masks() if T.leq_mask(m, 0))
    for x in xs:
        cur = heitmann_step(T, cur, T.coerce(x).mask)
    return cur


def iterated_heitmann_membership(T: Lattice, y, xs: Sequence) -> bool:
    return T.coerce(y).mask in iterated_heitmann_ideal(T, xs)


def _hdim_iterated(T: Lattice, ell: int, S: list[Element]) -> tuple | None:
    memo: dict = {}
    zero = frozenset(m for m in T.masks() if T.leq_mask(m, 0))

    def dfs(cur, depth):
        if (cur, depth) in memo:
            return memo[(cur, depth)]
        res = None
        for x in S:
            nxt = heitmann_step(T, cur, x.mask)
            if depth == ell:
                if T.full not in nxt:
                    res = (x,)
                    break
            else:
                sub = dfs(nxt, depth + 1)
                if sub is not None:
                    res = (x,) + sub
                    break
        memo[(cur, depth)] = res
        return res

    return dfs(zero, 0)


def hdim_leq(T: Lattice, ell: int, strategy: str = "recursive", generators=None) -> DimensionVerdict:
    """Decide ``Hdim T <= ell`` through Heitmann boundaries."""
    if ell < -1:
        raise LatticeError("dimension bound must be at least -1")
    strat = STRATEGIES.get(strategy)
    if strat not in ("recursive", "iterated"):
        raise LatticeError(f"unknown strategy {strategy!r}")
    if T.is_trivial():
        return DimensionVerdict(ell, True, strat)
    if ell == -1:
        return DimensionVerdict(ell, False, strat, None, (), "1 != 0")
    if strat == "recursive":
        ce = _hdim_recursive(T, ell, _labels_of(T, generators))
    else:
        S = _system(T, generators)
        key = ("hi", T.key, ell, tuple(x.mask for x in S))
        ce = _cached(key, lambda: _hdim_iterated(T, ell, S))
        ce = None if ce is None else tuple(_label(x) for x in ce)
    v = DimensionVerdict(ell, ce is None, strat, None, ce)
    if ce is not None:
        v.note = "1 is not in the iterated Heitmann boundary ideal"
    return v


def dimension(T: Lattice, kind: str = "kdim", limit: int = 16) -> int:
    """Least ell with the ``<= ell`` verdict holding (searching up to ``limit``)."""
    test = {"kdim": kdim_leq, "jdim": jdim_leq, "hdim": hdim_leq}[kind]
    for ell in range(-1, limit + 1):
        if test(T, ell).holds:
            return ell
    raise LatticeError(f"{kind} exceeds {limit}")
