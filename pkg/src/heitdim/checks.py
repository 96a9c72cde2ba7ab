"""Property suites cross-checking the deciders against brute-force oracles.

Each suite runs a list of properties over a seeded corpus and collects every
failure; the report leads with the failure on the smallest lattice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from . import dimension as dim
from . import ideals, spectra, zar
from .corpus import DEFAULT_SEED, CorpusEntry, corpus, random_posets
from .gluing import cover_diagram, glue, reconstruct_from_cover
from .heyting import is_boolean
from .lattice import Element, Lattice, isomorphic, opposite
from .rings import FiniteRing, IntegerRing, integers, mod_n, product_ring, square_zero_ring

SUITES = ("oracle", "boundary", "duality", "ring-transport")
LEVELS = range(-1, 5)


@dataclass
class Failure:
    prop: str
    subject: str
    size: int | None  # None for an infinite ring
    detail: str = ""

    def order(self):
        return (self.size is None, self.size or 0, self.subject, self.prop)

    def to_json(self) -> dict:
        return {"property": self.prop, "subject": self.subject, "size": self.size,
                "detail": self.detail}

    def __str__(self):
        count = "infinite" if self.size is None else f"{self.size} elements"
        out = f"{self.prop} on {self.subject} ({count})"
        return out + (f": {self.detail}" if self.detail else "")


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def first_failure(self) -> Failure | None:
        if not self.failures:
            return None
        return min(self.failures, key=Failure.order)

    def to_json(self, limit: int = 20) -> dict:
        ordered = sorted(self.failures, key=Failure.order)
        return {"suite": self.suite, "passed": self.passed, "checked": self.checked,
                "failure_count": len(self.failures),
                "first_failure": ordered[0].to_json() if ordered else None,
                "failures": [f.to_json() for f in ordered[:limit]]}


@dataclass
class CheckConfig:
    seed: int = DEFAULT_SEED
    count: int = 200
    max_gens: int = 3
    max_rels: int = 3
    max_elements: int = 64
    posets: int = 40
    max_points: int = 8


class _Runner:
    def __init__(self, suite: str):
        self.report = SuiteReport(suite)

    def run(self, prop: str, subject: str, size: int | None, test: Callable[[], str | bool | None]):
        """``test`` returns None/True when the property holds, else False or a detail string."""
        self.report.checked += 1
        try:
            res = test()
        except Exception as exc:  # a crash is a failure of the property
            res = f"{type(exc).__name__}: {exc}"
        if res is None or res is True:
            return
        self.report.failures.append(Failure(prop, subject, size, "" if res is False else str(res)))


def _entries(cfg: CheckConfig, bounded: bool = False) -> list[CorpusEntry]:
    out = corpus(cfg.seed, cfg.count, cfg.max_gens, cfg.max_rels)
    if bounded:
        out = [e for e in out if e.size <= cfg.max_elements]
    return out


# oracle suite

def _eval(e: Element, v: int) -> bool:
    return any(all(v >> i & 1 for i in t) for t in e.terms)


def _order_check(T: Lattice) -> str | None:
    """leq against direct evaluation of the DNF terms in every model."""
    els = T.elements()
    vals = [[_eval(e, v) for v in T.models] for e in els]
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            sem = all(not x or y for x, y in zip(vals[i], vals[j]))
            if T.leq(a, b) != sem:
                return f"leq({a}, {b}) = {T.leq(a, b)}, models say {sem}"
    return None


def _birkhoff_check(T: Lattice) -> str | None:
    els = T.elements()
    for a in els:
        for b in els:
            Da, Db = spectra.D(T, a), spectra.D(T, b)
            if T.leq(a, b) != (Da <= Db):
                return f"{a} <= {b} disagrees with open sets"
            if spectra.D(T, a & b) != Da & Db or spectra.D(T, a | b) != Da | Db:
                return f"open sets of {a}, {b} do not respect meet/join"
    return None


def _jacobson_check(T: Lattice) -> str | None:
    if T.is_trivial():
        return None
    for a in T.elements():
        J = ideals.principal_ideal(a)
        if ideals.jacobson(J).members() != spectra.jacobson_oracle(T, J).members():
            return f"jacobson of the ideal below {a}"
    return None


def _dimension_check(T: Lattice) -> str | None:
    k, j, h = spectra.kdim_oracle(T), spectra.jdim_oracle(T), spectra.hdim_oracle(T)
    for ell in LEVELS:
        for st in ("global", "upper", "lower"):
            if dim.kdim_leq(T, ell, st).holds != (k <= ell):
                return f"kdim <= {ell} ({st}) against oracle {k}"
        if dim.jdim_leq(T, ell).holds != (j <= ell):
            return f"jdim <= {ell} against oracle {j}"
        for st in ("recursive", "iterated"):
            if dim.hdim_leq(T, ell, st).holds != (h <= ell):
                return f"hdim <= {ell} ({st}) against oracle {h}"
    return None


def _boolean_check(T: Lattice) -> str | None:
    if T.is_trivial():
        return None
    b, k = is_boolean(T), dim.kdim_leq(T, 0).holds
    return None if b == k else f"boolean={b}, kdim<=0 is {k}"


def oracle_suite(cfg: CheckConfig) -> SuiteReport:
    r = _Runner("oracle")
    for e in _entries(cfg):
        T, n = e.lattice, e.size
        r.run("order agrees with model evaluation", e.name, n, lambda: _order_check(T))
        r.run("jacobson radical against maximal ideals", e.name, n, lambda: _jacobson_check(T))
        r.run("dimension verdicts against oracles", e.name, n, lambda: _dimension_check(T))
        r.run("boolean iff dimension 0", e.name, n, lambda: _boolean_check(T))
        if n <= cfg.max_elements:
            r.run("order embeds into open sets", e.name, n, lambda: _birkhoff_check(T))
    return r.report


# boundary suite

def _intersection_identity(T: Lattice, boundary) -> str | None:
    B = {m: boundary(T, T.from_mask(m)).members() for m in T.masks()}
    for x in T.masks():
        for y in T.masks():
            if B[x] & B[y] != B[x | y] & B[x & y]:
                return f"x={T.from_mask(x)}, y={T.from_mask(y)}"
    return None


def _regularity(T: Lattice) -> str | None:
    for x in T.elements():
        K = dim.krull_boundary_ideal(T, x)
        if ideals.conductor(ideals.ideal_from(T), K.generators).members() != {0}:
            return f"boundary ideal of {x} has a nonzero annihilator"
    return None


def _jacobson_quotient(T: Lattice):
    return ideals.quotient(T, [ideals.jacobson(ideals.ideal_from(T)).top()])


def _comparison_chain(T: Lattice) -> str | None:
    Tp = _jacobson_quotient(T)[0]
    for ell in LEVELS:
        k, kp = dim.kdim_leq(T, ell).holds, dim.kdim_leq(Tp, ell).holds
        j, h = dim.jdim_leq(T, ell).holds, dim.hdim_leq(T, ell).holds
        if k and not kp:
            return f"kdim(T) <= {ell} but not kdim(T/J(0))"
        if kp and not j:
            return f"kdim(T/J(0)) <= {ell} but not jdim"
        if j and not h:
            return f"jdim <= {ell} but not hdim"
        if h != j:
            return f"hdim and jdim differ at {ell} on a finite lattice"
        if h != dim.hdim_leq(Tp, ell).holds:
            return f"hdim of T and T/J(0) differ at {ell}"
    if not T.is_trivial() and not dim.jdim_leq(T, 0).holds:
        return "jdim of a nontrivial finite lattice is not 0"
    return None


def _heitmann_from_krull(T: Lattice) -> str | None:
    if T.is_trivial():
        return None
    Tp, pi = _jacobson_quotient(T)
    for x in T.elements():
        pre = ideals.ideal_preimage(pi, dim.krull_boundary_ideal(Tp, pi(x))).members()
        if pre != dim.heitmann_boundary_ideal(T, x).members():
            return f"at {x}"
    return None


def _duality_dimension(T: Lattice) -> str | None:
    Top = opposite(T)
    for ell in LEVELS:
        if dim.kdim_leq(T, ell).holds != dim.kdim_leq(Top, ell).holds:
            return f"kdim <= {ell} differs on the opposite lattice"
    return None


def _quotients_do_not_raise(T: Lattice) -> str | None:
    for x in T.elements():
        Q = ideals.quotient(T, [x])[0]
        R = ideals.quotient(T, [], [x])[0]
        for ell in LEVELS:
            if dim.kdim_leq(T, ell).holds and not (dim.kdim_leq(Q, ell).holds
                                                   and dim.kdim_leq(R, ell).holds):
                return f"a quotient at {x} raises kdim above {ell}"
            if dim.hdim_leq(T, ell).holds and not dim.hdim_leq(Q, ell).holds:
                return f"the quotient killing {x} raises hdim above {ell}"
    return None


def _covering_max(T: Lattice) -> str | None:
    masks = T.masks()
    for a, b in product(masks, repeat=2):
        if a > b or a & b:
            continue
        Qa = ideals.quotient(T, [T.from_mask(a)])[0]
        Qb = ideals.quotient(T, [T.from_mask(b)])[0]
        for ell in LEVELS:
            for test in (dim.kdim_leq, dim.hdim_leq):
                both = test(Qa, ell).holds and test(Qb, ell).holds
                if test(T, ell).holds != both:
                    return f"{test.__name__} <= {ell} with cover {T.from_mask(a)}, {T.from_mask(b)}"
    return None


def _chain_forms(T: Lattice) -> str | None:
    S = [T.gen(g) for g in T.generators]
    for ell in range(0, 3):
        tuples = list(product(S, repeat=ell + 1))
        h = all(dim.heyting_chain_value(T, xs) == T.top for xs in tuples)
        b = all(dim.brouwer_chain_value(T, xs) == T.bottom for xs in tuples)
        k = dim.kdim_leq(T, ell).holds
        if h != k or b != k:
            return f"chain forms at {ell}: heyting={h}, brouwer={b}, kdim={k}"
    return None


def _iterated_krull(T: Lattice) -> str | None:
    S = [T.gen(g) for g in T.generators]
    for ell in range(0, 3):
        every = all(dim.iterated_krull_membership(T, T.top, xs)
                    for xs in product(S, repeat=ell + 1))
        if every != dim.kdim_leq(T, ell).holds:
            return f"iterated boundary membership at {ell}"
    return None


def boundary_suite(cfg: CheckConfig) -> SuiteReport:
    r = _Runner("boundary")
    for e in _entries(cfg, bounded=True):
        T, n = e.lattice, e.size
        r.run("Krull boundary intersection identity", e.name, n,
              lambda: _intersection_identity(T, dim.krull_boundary_ideal))
        r.run("Heitmann boundary intersection identity", e.name, n,
              lambda: _intersection_identity(T, dim.heitmann_boundary_ideal))
        r.run("Krull boundary ideal is regular", e.name, n, lambda: _regularity(T))
        r.run("Heitmann comparison chain", e.name, n, lambda: _comparison_chain(T))
        r.run("Heitmann boundary is a Krull boundary preimage", e.name, n,
              lambda: _heitmann_from_krull(T))
        r.run("opposite lattice has the same dimension", e.name, n, lambda: _duality_dimension(T))
        r.run("quotients do not raise dimension", e.name, n, lambda: _quotients_do_not_raise(T))
        r.run("dimension of a cover is the maximum", e.name, n, lambda: _covering_max(T))
        r.run("Heyting and Brouwer chain forms", e.name, n, lambda: _chain_forms(T))
        r.run("iterated Krull boundary membership", e.name, n, lambda: _iterated_krull(T))
    return r.report


# duality suite

def _gluing_roundtrip(T: Lattice) -> str | None:
    masks = T.masks()
    for a, b in product(masks, repeat=2):
        if a > b or a & b:
            continue
        pair = [T.from_mask(a), T.from_mask(b)]
        L, _ = reconstruct_from_cover(T, pair)
        if not isomorphic(L, T):
            return f"reconstruction from {pair[0]}, {pair[1]}"
        if not isomorphic(glue(cover_diagram(T, pair))[0], T):
            return f"glued diagram of {pair[0]}, {pair[1]}"
    return None


def _jspec_check(T: Lattice) -> str | None:
    Js = spectra.Jspec_lattice(T)
    if not isomorphic(Js, dim.heitmann_lattice(T)[0]):
        return "Jspec lattice and Heitmann lattice differ"
    pts = len(spectra.jspec_points(T))
    if not pts == len(spectra.maximal_ideals(T)) == len(spectra.prime_ideals(Js)):
        return "jspec, Max and the primes of the Jspec lattice differ in size"
    return None


def duality_suite(cfg: CheckConfig) -> SuiteReport:
    r = _Runner("duality")
    for e in _entries(cfg, bounded=True):
        T, n = e.lattice, e.size
        r.run("down-sets of the spectrum", e.name, n, lambda: spectra.spectrum_roundtrip(T))
        r.run("Jspec lattice is the Heitmann lattice", e.name, n, lambda: _jspec_check(T))
        r.run("gluing roundtrip", e.name, n, lambda: _gluing_roundtrip(T))
    for k, P in enumerate(random_posets(cfg.seed, cfg.posets, cfg.max_points)):
        def test(P=P):
            L = spectra.downset_lattice(P)
            return spectra.poset_isomorphic(spectra.prime_ideals(L).as_poset(), P)
        r.run("spectrum of the down-set lattice", f"poset{k:02d}", 1 << len(P), test)
    return r.report


# ring-transport suite

RING_MODULI = (4, 8, 12, 30, 36, 60)


def transport_rings() -> list[tuple[str, FiniteRing]]:
    out: list[tuple[str, FiniteRing]] = [(f"Z/{n}", mod_n(n)) for n in RING_MODULI]
    out.append(("Z/2 x Z/4", product_ring(mod_n(2), mod_n(4))))
    out.append(("GF2[e1,e2]/(e)^2", square_zero_ring(2, 2)))
    return out


def _ideal(A: FiniteRing, gens) -> frozenset:
    return A.ideal(list(gens))


def _transport_jacobson(A: FiniteRing) -> str | None:
    Z = zariski_of(A)
    for g in A.elements():
        J = _ideal(A, [g])
        radical = [x for x in A.elements() if zar.jacobson_member(A, x, [g], mode="exhaustive")]
        if ideals.jacobson(Z.IZ(J)).members() != Z.IZ(radical).members():
            return f"Jacobson radical of <{A.format(g)}>"
    return None


def _transport_boundaries(A: FiniteRing) -> str | None:
    Z = zariski_of(A)
    L = Z.lattice
    for g in A.elements():
        x = Z.D(g)
        K = _ideal(A, zar.krull_boundary_gens(A, [g]))
        if dim.krull_boundary_ideal(L, x).members() != Z.IZ(K).members():
            return f"Krull boundary of {A.format(g)}"
        H = _ideal(A, zar.heitmann_boundary_gens(A, [g]))
        if dim.heitmann_boundary_ideal(L, x).members() != Z.IZ(H).members():
            return f"Heitmann boundary of {A.format(g)}"
    return None


def _collapse_direct(n: int, xs, as_, ms) -> int:
    w = 1
    for x, a, m in reversed(list(zip(xs, as_, ms))):
        w = pow(x, m, n) * (w + a * x) % n if n else x ** m * (w + a * x)
    return w % n if n else w


def _collapse_check(A: IntegerRing, rng: random.Random) -> str | None:
    """verify_collapse against direct integer arithmetic on random data."""
    n = A.modulus
    for _ in range(200):
        ell = rng.randint(0, 2)
        xs = [rng.randint(-20, 20) for _ in range(ell + 1)]
        as_ = [rng.randint(-20, 20) for _ in range(ell + 1)]
        ms = [rng.randint(0, 3) for _ in range(ell + 1)]
        truth = _collapse_direct(n, xs, as_, ms) == 0
        if zar.verify_collapse(A, xs, as_, ms) != truth:
            return f"xs={xs}, as={as_}, ms={ms}"
    return None


def _witness_check(A: FiniteRing) -> str | None:
    for ell in (0, 1):
        for xs in product(A.elements(), repeat=ell + 1):
            w = zar.collapse_witness(A, list(xs))
            if w is None:
                return f"no collapse for {[A.format(x) for x in xs]}"
            as_, ms = w
            direct = zar.collapse_value(A, list(xs), as_, ms)
            if not A.is_zero(direct):
                return f"witness for {[A.format(x) for x in xs]} does not collapse"
    return None


def _strategy_check(A: FiniteRing) -> str | None:
    k = zar.ring_kdim_oracle(A)
    for ell in range(-1, 2):
        for st in ("collapse", "upper", "lower"):
            if zar.kdim_ring_leq(A, ell, st).holds != (k <= ell):
                return f"kdim <= {ell} ({st}) against prime chains {k}"
        for st in ("recursive", "bracket"):
            if zar.hdim_ring_leq(A, ell, st).holds != (ell >= 0):
                return f"hdim <= {ell} ({st})"
    return None


def _bracket_check(A: FiniteRing) -> str | None:
    for xs in product(A.elements(), repeat=2):
        if zar.bracket_heitmann_ideal(A, xs) != zar.quotient_heitmann_ideal(A, xs):
            return f"iterated Heitmann ideal of {[A.format(x) for x in xs]}"
    return None


def _integer_jacobson(A: IntegerRing) -> str | None:
    for x in A.elements():
        for j in A.elements():
            if A.jacobson_member(x, [j]) != A.ex_jacobson_member(x, [j]):
                return f"{x} in J(<{j}>)"
    return None


_zar_cache: dict = {}


def zariski_of(A: FiniteRing):
    if A.key not in _zar_cache:
        _zar_cache[A.key] = zar.zariski_lattice(A)
    return _zar_cache[A.key]


def ring_transport_suite(cfg: CheckConfig) -> SuiteReport:
    r = _Runner("ring-transport")
    rng = random.Random(cfg.seed)
    for name, A in transport_rings():
        n = len(A)
        r.run("Jacobson radical transports to the Zariski lattice", name, n,
              lambda: _transport_jacobson(A))
        r.run("boundary ideals transport to the Zariski lattice", name, n,
              lambda: _transport_boundaries(A))
        r.run("collapse witnesses", name, n, lambda: _witness_check(A))
        r.run("dimension strategies agree with prime chains", name, n, lambda: _strategy_check(A))
        if n <= 12:
            r.run("bracket and quotient Heitmann ideals", name, n, lambda: _bracket_check(A))
        if isinstance(A, IntegerRing):
            r.run("Jacobson shortcut against exhaustion", name, n, lambda: _integer_jacobson(A))
            r.run("collapse identity evaluation", name, n, lambda: _collapse_check(A, rng))
    Z = integers()
    r.run("collapse identity evaluation", "Z", None, lambda: _collapse_check(Z, rng))
    r.run("collapse rejects a non-witness", "Z", None,
          lambda: not zar.verify_collapse(Z, [2], [0], [1]))
    return r.report


SUITE_RUNNERS = {"oracle": oracle_suite, "boundary": boundary_suite,
                 "duality": duality_suite, "ring-transport": ring_transport_suite}


def run_suite(name: str, cfg: CheckConfig | None = None) -> SuiteReport:
    if name not in SUITE_RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITE_RUNNERS[name](cfg or CheckConfig())


def run_suites(names: Iterable[str], cfg: CheckConfig | None = None) -> list[SuiteReport]:
    return [run_suite(n, cfg) for n in names]
