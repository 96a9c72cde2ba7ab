"""Zariski and Heitmann lattices of a ring, boundary rings and ring dimension deciders.

Finite rings are handled exhaustively.  Z and GF(p)[X] are principal ideal
domains and use explicit ideal arithmetic; for them a witness construction
is available for every tuple, and refutations are exact.  Anything else
gets ``None`` ("unknown") when a search runs out of budget.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import ideals
from .dimension import DimensionVerdict
from .lattice import Lattice, LatticeError, Presentation, Relation
from .rings import FiniteRing, PrincipalQuotient, Ring, RingError

EXHAUSTIVE_TUPLES = 20000


def _is_pid_domain(A: Ring) -> bool:
    return isinstance(A, PrincipalQuotient) and A.domain


def _is_finite(A: Ring) -> bool:
    return isinstance(A, FiniteRing) and A.finite


def _size(A: FiniteRing) -> int:
    if isinstance(A, PrincipalQuotient):
        m = A.modulus
        return m if isinstance(m, int) else A.p ** (len(m) - 1)
    return len(A)


# Zariski lattice

def zar_leq(A: Ring, U: Sequence, J: Sequence) -> bool:
    """``D(u1) & ... & D(un) <= D(J)``, i.e. the product of U lies in the radical of <J>."""
    return A.radical_member(A.prod(U), list(J))


class ZarElement:
    """``D(gens)``, the radical of the ideal generated by ``gens``."""

    def __init__(self, ring: Ring, gens: Sequence = ()):
        self.ring = ring
        self.gens = tuple(ring.normalize(g) for g in gens)

    def __le__(self, other: ZarElement) -> bool:
        return all(zar_leq(self.ring, [g], other.gens) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, ZarElement):
            return NotImplemented
        return self <= other and other <= self

    def __hash__(self):
        return hash(self.ring.key)

    def __and__(self, other: ZarElement) -> ZarElement:
        A = self.ring
        return ZarElement(A, [A.mul(a, b) for a in self.gens for b in other.gens])

    def __or__(self, other: ZarElement) -> ZarElement:
        return ZarElement(self.ring, self.gens + other.gens)

    def __repr__(self):
        return f"D({', '.join(self.ring.format(g) for g in self.gens)})"


def jacobson_member(A: Ring, x, J: Sequence = (), mode: str = "auto",
                    budget: int = 200, seed: int = 0) -> bool | None:
    """``x`` in the Jacobson radical of <J>: ``1 + xy`` is a unit modulo <J> for all y.

    ``auto`` uses the ring's own test (exact for the supported families),
    ``exhaustive`` runs through every y (finite rings only).  Otherwise a
    bounded search can only refute, and returns None when it does not.
    """
    J = list(J)
    if mode == "exhaustive":
        if not _is_finite(A):
            raise RingError("exhaustive Jacobson test needs a finite ring")
        return A.ex_jacobson_member(x, J)
    res = A.jacobson_member(x, J)
    if res is not None:
        return res
    rng = random.Random(seed)
    for _ in range(budget):
        y = A.sample(rng)
        if not A.unit_mod(A.add(A.one, A.mul(x, y)), J):
            return False
    return None


class HeitElement:
    """``J(gens)``, the Jacobson radical of the ideal generated by ``gens``."""

    def __init__(self, ring: Ring, gens: Sequence = ()):
        self.ring = ring
        self.gens = tuple(ring.normalize(g) for g in gens)

    def leq(self, other: HeitElement) -> bool | None:
        out: bool | None = True
        for g in self.gens:
            r = jacobson_member(self.ring, g, other.gens)
            if r is False:
                return False
            if r is None:
                out = None
        return out

    def __repr__(self):
        return f"J({', '.join(self.ring.format(g) for g in self.gens)})"


def heit_eq(A: Ring, h1: HeitElement, h2: HeitElement) -> bool | None:
    a, b = h1.leq(h2), h2.leq(h1)
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def heit_meet(A: Ring, h1: HeitElement, h2: HeitElement) -> HeitElement:
    return HeitElement(A, [A.mul(a, b) for a in h1.gens for b in h2.gens])


def heit_join(A: Ring, h1: HeitElement, h2: HeitElement) -> HeitElement:
    return HeitElement(A, h1.gens + h2.gens)


# boundary ideals and rings

def krull_boundary_gens(A: Ring, j: Sequence) -> list:
    """Generators of ``<j> + (nilradical : <j>)``."""
    j = [A.normalize(x) for x in j]
    if isinstance(A, PrincipalQuotient):
        d = A.ideal_gen(j)
        return [d, A.colon_gen(A.nil_gen(), d)]
    if _is_finite(A):
        col = A.colon(A.nilradical(), j)
        return sorted(A.ideal(list(j) + sorted(col)))
    raise RingError(f"no boundary ideal membership for {A.name}")


def heitmann_boundary_gens(A: Ring, j: Sequence) -> list:
    """Generators of ``<j> + (J(0) : <j>)``."""
    j = [A.normalize(x) for x in j]
    if isinstance(A, PrincipalQuotient):
        d = A.ideal_gen(j)
        return [d, A.colon_gen(A.jacobson_zero_gen(), d)]
    if _is_finite(A):
        col = A.colon(A.jacobson_zero(), j)
        return sorted(A.ideal(list(j) + sorted(col)))
    raise RingError(f"no Heitmann boundary membership for {A.name}")


def krull_boundary_ring(A: Ring, j: Sequence) -> Ring:
    return A.quotient(krull_boundary_gens(A, j))


def heitmann_boundary_ring(A: Ring, j: Sequence) -> Ring:
    return A.quotient(heitmann_boundary_gens(A, j))


def lower_boundary_kernel(A: FiniteRing, x) -> frozenset:
    """``{b | s b = 0 for some s = x^n (1 + a x)}``; the localization of a finite
    ring at that monoid is the quotient by this ideal."""
    S = {A.mul(p, A.add(A.one, A.mul(a, x))) for p in A.powers(x) for a in A.elements()}
    return frozenset(b for b in A.elements() if any(A.is_zero(A.mul(s, b)) for s in S))


def lower_boundary_ring(A: Ring, x) -> Ring:
    if not _is_finite(A):
        raise RingError("localization is only available for finite rings")
    return A.quotient(sorted(lower_boundary_kernel(A, A.normalize(x))))


def lower_boundary_contains_zero(A: Ring, x, budget_exp: int = 16, budget_coeff: int = 100,
                                 seed: int = 0) -> bool | None:
    """Whether ``x^n (1 + a x) = 0`` for some n and a."""
    x = A.normalize(x)
    if _is_finite(A):
        return any(A.is_zero(A.mul(p, A.add(A.one, A.mul(a, x))))
                   for p in A.powers(x) for a in A.elements())
    if _is_pid_domain(A):
        # in a domain the product vanishes only if x = 0 or 1 + a x = 0
        return A.is_zero(x) or A._unit(x)
    rng = random.Random(seed)
    for n in range(budget_exp + 1):
        p = A.pow(x, n)
        for _ in range(budget_coeff):
            if A.is_zero(A.mul(p, A.add(A.one, A.mul(A.sample(rng), x)))):
                return True
    return None


# collapse identities

def collapse_value(A: Ring, xs: Sequence, as_: Sequence, ms: Sequence[int], y=None):
    """``x0^m0 (x1^m1 (... (x_l^m_l (y + a_l x_l)) ...) + a1 x1) + a0 x0)``, y = 1 by default."""
    if not (len(xs) == len(as_) == len(ms)):
        raise RingError("xs, as and ms must have equal lengths")
    w = A.one if y is None else A.normalize(y)
    for x, a, m in reversed(list(zip(xs, as_, ms))):
        w = A.mul(A.pow(x, int(m)), A.add(w, A.mul(a, x)))
    return w


def verify_collapse(A: Ring, xs: Sequence, as_: Sequence, ms: Sequence[int], y=None) -> bool:
    return A.is_zero(collapse_value(A, xs, as_, ms, y))


def _split_coprime(A: PrincipalQuotient, n, x):
    """``n = u v`` with u built from primes shared with x and v coprime to x."""
    v = n
    while True:
        c = A._gcd(v, x)
        if A._unit(c):
            return A._divexact(n, v), v
        v = A._divexact(v, c)


def _neg_inverse(A: PrincipalQuotient, x, v):
    return A.zero if A._unit(v) else A.neg(A.inverse_mod(x, v))


def _single_witness_pid(A: PrincipalQuotient, x):
    """(a, m) with ``x^m (1 + a x) = 0`` in A, or None."""
    if A.domain:
        if A.is_zero(x):
            return A.zero, 1
        if A._unit(x):
            return A.neg(A.unit_inverse(x)), 0
        return None
    # multiples of u and v together are multiples of the modulus
    u, v = _split_coprime(A, A.modulus, x)
    m = 0
    while not A._divides(u, A.pow(x, m)):
        m += 1
    return _neg_inverse(A, x, v), m


def _pad(A: Ring, start: int, inner_as: list, inner_ms: list):
    """Once the value at level ``start`` vanishes, the outer levels take a = 0, m = 0."""
    return [A.zero] * start + inner_as, [0] * start + inner_ms


def _pid_collapse(A: PrincipalQuotient, xs):
    ell = len(xs) - 1
    w = _single_witness_pid(A, xs[-1])
    if w is not None:
        return _pad(A, ell, [w[0]], [w[1]])
    if ell == 0:
        return None
    # domain, two innermost levels: x0^0 (x1^m1 (1 + a1 x1) + a0 x0) = 0
    x0, x1 = xs[-2], xs[-1]
    if A.is_zero(x0):
        return _pad(A, ell - 1, [A.zero, A.zero], [1, 0])
    u, v = _split_coprime(A, x0, x1)
    m1 = 0
    while not A._divides(u, A.pow(x1, m1)):
        m1 += 1
    a1 = _neg_inverse(A, x1, v)
    inner = A.mul(A.pow(x1, m1), A.add(A.one, A.mul(a1, x1)))
    a0 = A.neg(A._divexact(inner, x0))
    return _pad(A, ell - 1, [a0, a1], [0, m1])


def _finite_collapse(A: FiniteRing, xs):
    """Exhaustive search, innermost level first, over the values reachable so far."""
    ell = len(xs) - 1
    els = A.elements()
    layers: list[dict] = []
    reach = {A.one: None}
    for lvl in range(ell, -1, -1):
        x = xs[lvl]
        pw = A.powers(x)
        nxt: dict = {}
        for w in reach:
            for a in els:
                t = A.add(w, A.mul(a, x))
                for m, p in enumerate(pw):
                    nxt.setdefault(A.mul(p, t), (w, a, m))
        layers.append(nxt)
        if A.zero in nxt:
            as_, ms = [], []
            val = A.zero
            for layer in reversed(layers):
                w, a, m = layer[val]
                as_.append(a)
                ms.append(m)
                val = w
            return _pad(A, lvl, as_, ms)
        reach = nxt
    return None


def collapse_witness(A: Ring, xs: Sequence, exhaustive: bool = False):
    """(as, ms) making the collapse identity vanish, or None when there is none.

    Principal quotients use the explicit construction unless ``exhaustive``
    is set; finite rings can always be searched exhaustively.
    """
    xs = [A.normalize(x) for x in xs]
    if not xs:
        return ([], []) if A.is_trivial() else None
    if exhaustive or not isinstance(A, PrincipalQuotient):
        if not _is_finite(A):
            raise RingError(f"no witness method for {A.name}")
        return _finite_collapse(A, xs)
    return _pid_collapse(A, xs)


# ring dimension deciders

_memo: dict = {}
_memo_lock = threading.Lock()


def clear_caches() -> None:
    with _memo_lock:
        _memo.clear()


def _remember(key, compute):
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    val = compute()
    with _memo_lock:
        _memo.setdefault(key, val)
    return val


def _canonical_non_unit(A: Ring):
    """2 in Z, X in GF(p)[X]: a fixed test element that is neither 0 nor a unit."""
    if isinstance(A, PrincipalQuotient) and A.domain:
        return A.X if hasattr(A, "X") else A.normalize(2)
    return None


def _element_classes(A: Ring) -> list:
    """Elements of a finite ring, or one per ideal for a principal quotient.

    Collapse witnesses and boundary rings depend only on the ideal an element
    generates, so the divisors of the modulus stand for all elements.
    """
    if isinstance(A, PrincipalQuotient):
        return A.ideal_representatives()
    return A.elements()


def _test_tuples(A: Ring, ell: int, samples: int, budget_coeff, seed: int):
    """All tuples for small finite rings, else a seeded sample (None means sampled)."""
    if _is_finite(A) and _size(A) ** (ell + 1) <= EXHAUSTIVE_TUPLES:
        return list(product(A.elements(), repeat=ell + 1)), True
    rng = random.Random(seed)
    out = []
    c = _canonical_non_unit(A)
    if c is not None:
        out.append(tuple([c] * (ell + 1)))
    while len(out) < samples:
        out.append(tuple(A.sample(rng, budget_coeff) for _ in range(ell + 1)))
    return out, False


def _fmt_tuple(A: Ring, xs) -> tuple:
    return tuple(A.format(x) for x in xs)


def kdim_ring_leq(A: Ring, ell: int, strategy: str = "collapse", samples: int = 20,
                  budget_exp: int = 16, budget_coeff: int | None = None, seed: int = 0,
                  witness: bool = False) -> DimensionVerdict:
    """Decide ``Kdim A <= ell``.

    Strategies: ``collapse`` searches the vanishing identity for each test
    tuple, ``upper`` recurses through Krull boundary rings, ``lower`` through
    the localizations at the boundary monoids (finite rings only).
    """
    if ell < -1:
        raise RingError("dimension bound must be at least -1")
    if strategy not in ("collapse", "upper", "lower"):
        raise RingError(f"unknown strategy {strategy!r}")
    if A.is_trivial():
        return DimensionVerdict(ell, True, strategy, [] if witness else None)
    if ell == -1:
        return DimensionVerdict(ell, False, strategy, None, (), "1 != 0")
    if strategy == "collapse":
        return _kdim_collapse(A, ell, samples, budget_coeff, seed, witness)
    side = strategy
    if side == "lower" and not _is_finite(A):
        return DimensionVerdict(ell, None, side, note="localization needs a finite ring")
    ce = _ring_recursion(A, ell, side, samples, budget_coeff, seed)
    return _recursion_verdict(A, ell, side, ce)


def _kdim_collapse(A, ell, samples, budget_coeff, seed, witness) -> DimensionVerdict:
    if not (_is_finite(A) or _is_pid_domain(A)):
        return DimensionVerdict(ell, None, "collapse", note=f"no witness method for {A.name}")
    if _is_finite(A) and _size(A) ** (ell + 1) > EXHAUSTIVE_TUPLES:
        # a witness for the last coordinate alone already pads out to the whole tuple
        for x in _element_classes(A):
            if collapse_witness(A, [x]) is None:
                return DimensionVerdict(ell, None, "collapse", None, None,
                                        "too many tuples for exhaustive search")
        return DimensionVerdict(ell, True, "collapse", None, None,
                                "every single element collapses, so every tuple does")
    tuples, exhaustive = _test_tuples(A, ell, samples, budget_coeff, seed)
    found = []
    for xs in tuples:
        w = collapse_witness(A, xs)
        if w is None:
            return DimensionVerdict(ell, False, "collapse", None, _fmt_tuple(A, xs),
                                    "no collapse exists for this tuple")
        if not verify_collapse(A, xs, *w):
            raise RingError(f"constructed witness fails at {xs}")
        if witness:
            found.append((xs, w))
    note = "" if exhaustive else (
        f"witness construction is total on {A.name}; {len(tuples)} sampled tuples verified")
    v = DimensionVerdict(ell, True, "collapse", None, None, note)
    if witness:
        v.witness = [(_fmt_tuple(A, xs), [A.format(a) for a in as_], list(ms))
                     for xs, (as_, ms) in found]
    return v


def _boundary(A: Ring, x, side: str) -> Ring:
    if side == "upper":
        return krull_boundary_ring(A, [x])
    if side == "lower":
        return lower_boundary_ring(A, x)
    return heitmann_boundary_ring(A, [x])


def _ring_recursion(A: Ring, ell: int, side: str, samples: int, budget_coeff: int, seed: int):
    """Counterexample path through iterated boundary rings, or None.

    For a principal ideal domain every boundary at a nonzero x is the finite
    ring A/(x) (and the boundary at 0 is trivial), so a sample of x values
    only decides which finite rings are examined.
    """
    if A.is_trivial():
        return None
    if ell < 0:
        return ()

    def compute():
        if _is_finite(A):
            xs = _element_classes(A)
        elif _is_pid_domain(A):
            xs = [t[0] for t in _test_tuples(A, 0, samples, budget_coeff, seed)[0]]
        else:
            raise RingError(f"no boundary rings for {A.name}")
        for x in xs:
            sub = _ring_recursion(_boundary(A, x, side), ell - 1, side, samples, budget_coeff, seed)
            if sub is not None:
                return (A.format(x),) + sub
        return None

    if _is_finite(A):
        return _remember((side, A.key, ell), compute)
    return compute()


def _recursion_verdict(A, ell, strat, ce) -> DimensionVerdict:
    v = DimensionVerdict(ell, ce is None, strat, None, ce)
    if ce is not None:
        v.note = "boundary ring along this path is nontrivial at the last level"
    elif not _is_finite(A):
        v.note = f"every boundary at a nonzero element of {A.name} is a finite quotient; sampled elements verified"
    return v


def hdim_ring_leq(A: Ring, ell: int, strategy: str = "recursive", samples: int = 20,
                  budget_coeff: int | None = None, seed: int = 0) -> DimensionVerdict:
    """Decide ``Hdim A <= ell`` through Heitmann boundary rings, or with the
    bracket description of the iterated boundary ideals (finite rings)."""
    if ell < -1:
        raise RingError("dimension bound must be at least -1")
    if strategy not in ("recursive", "bracket"):
        raise RingError(f"unknown strategy {strategy!r}")
    if A.is_trivial():
        return DimensionVerdict(ell, True, strategy)
    if ell == -1:
        return DimensionVerdict(ell, False, strategy, None, (), "1 != 0")
    if strategy == "recursive":
        ce = _ring_recursion(A, ell, "heitmann", samples, budget_coeff, seed)
        return _recursion_verdict(A, ell, strategy, ce)
    if not _is_finite(A):
        return DimensionVerdict(ell, None, strategy, note="bracket search needs a finite ring")
    tuples, exhaustive = _test_tuples(A, ell, samples, budget_coeff, seed)
    if not exhaustive:
        return DimensionVerdict(ell, None, strategy, note="too many tuples for exhaustive search")
    for xs in tuples:
        if A.one not in bracket_heitmann_ideal(A, xs):
            return DimensionVerdict(ell, False, strategy, None, _fmt_tuple(A, xs),
                                    "1 is not in the iterated Heitmann boundary ideal")
    return DimensionVerdict(ell, True, strategy)


def bracket(A: Ring, z, x, a, y, b):
    """``1 + (1 + (z + a x) x y) b``."""
    inner = A.mul(A.mul(A.add(z, A.mul(a, x)), x), y)
    return A.add(A.one, A.mul(A.add(A.one, inner), b))


def _bracket_step(A: FiniteRing, cur: frozenset, x) -> frozenset:
    def compute():
        els = A.elements()
        # depends on z and a only through c = (z + a x) x, and on y only through u = 1 + c y
        rescued = {u for u in els if any(A.add(A.one, A.mul(u, b)) in cur for b in els)}
        good = {c for c in els if all(A.add(A.one, A.mul(c, y)) in rescued for y in els)}
        return frozenset(z for z in els if any(A.mul(A.add(z, A.mul(a, x)), x) in good for a in els))
    return _remember(("bracket", A.key, cur, x), compute)


def bracket_heitmann_ideal(A: FiniteRing, xs: Sequence) -> frozenset:
    """Iterated Heitmann boundary ideal of a finite ring by the bracket formula:
    z is in H[x0..xk] iff some a_k makes ``[z, x_k, a_k, y, b]`` land in
    H[x0..x(k-1)] for every y with a suitable b."""
    cur = frozenset([A.zero])
    for x in A_norm(A, xs):
        cur = _bracket_step(A, cur, x)
    return cur


def A_norm(A: Ring, xs):
    return [A.normalize(x) for x in xs]


def quotient_heitmann_ideal(A: FiniteRing, xs: Sequence) -> frozenset:
    """The same ideal through successive quotients: the Heitmann boundary of x in
    A/I pulls back to ``I + xA + {z | z x in J(I)}``."""
    els = A.elements()
    cur = frozenset([A.zero])
    for x in A_norm(A, xs):
        gens = sorted(cur)
        jac = frozenset(z for z in els if A.ex_jacobson_member(z, gens))
        col = [z for z in els if A.mul(z, x) in jac]
        cur = A.ideal(gens + [x] + col)
    return cur


def ring_prime_ideals(A: FiniteRing) -> list[frozenset]:
    """All prime ideals of a finite ring, from the lattice of ideals."""
    els = A.elements()
    found = {frozenset([A.zero])}
    todo = list(found)
    while todo:
        I = todo.pop()
        for x in els:
            if x not in I:
                J = A.ideal(sorted(I) + [x])
                if J not in found:
                    found.add(J)
                    todo.append(J)
    full = frozenset(els)
    return [P for P in found if P != full
            and all(a in P or b in P for a in els for b in els if A.mul(a, b) in P)]


def ring_kdim_oracle(A: FiniteRing) -> int:
    primes = ring_prime_ideals(A)
    best = {P: 0 for P in primes}
    for P in sorted(primes, key=len):
        for Q in primes:
            if Q < P:
                best[P] = max(best[P], best[Q] + 1)
    return max(best.values(), default=-1)


# Zariski lattice as a finitely presented lattice

def zar_label(A: Ring, g) -> str:
    return f"D[{A.format(g)}]"


def zar_lattice_adapter(A: Ring, pool: Sequence, bound: int = 12) -> Lattice:
    """Lattice on symbols D[g] (g in pool) with every relation
    ``D[u1] & ... & D[un] <= D[j1] | ... | D[jm]`` that holds in A.

    Each two-valued assignment either satisfies all of them or violates the
    one built from its own true and false sets, so one relation per
    excluded assignment suffices.
    """
    pool = list(dict.fromkeys(A.normalize(g) for g in pool))
    if len(pool) > bound:
        raise LatticeError(f"generator pool too large ({len(pool)} > {bound})")
    labels = [zar_label(A, g) for g in pool]
    if len(set(labels)) != len(labels):
        raise LatticeError("pool elements share a label")
    rels = []
    for v in range(1 << len(pool)):
        U = [pool[i] for i in range(len(pool)) if v >> i & 1]
        J = [pool[i] for i in range(len(pool)) if not v >> i & 1]
        if zar_leq(A, U, J):
            rels.append(Relation.leq([labels[pool.index(u)] for u in U],
                                     [labels[pool.index(j)] for j in J]))
    return Lattice(Presentation(tuple(labels), tuple(rels)))


@dataclass
class ZarLattice:
    """Zar A of a finite ring, one generator per radical class."""

    ring: FiniteRing
    lattice: Lattice
    rep: dict

    def D(self, *xs):
        L, A = self.lattice, self.ring
        return L.join(*[L.gen(zar_label(A, self.rep[A.normalize(x)])) for x in xs])

    def IZ(self, ideal_set) -> ideals.IdealHandle:
        """The lattice ideal of all D(x1..xn) with the x_i in a ring ideal."""
        return ideals.principal_ideal(self.D(*ideal_set))


def zariski_lattice(A: FiniteRing) -> ZarLattice:
    if not _is_finite(A):
        raise RingError("the full Zariski lattice needs a finite ring")
    reps: list = []
    rep = {}
    for x in A.elements():
        for r in reps:
            if A.radical_member(x, [r]) and A.radical_member(r, [x]):
                rep[x] = r
                break
        else:
            reps.append(x)
            rep[x] = x
    return ZarLattice(A, zar_lattice_adapter(A, reps, bound=max(12, len(reps))), rep)
