"""Ideals, filters, conductors, Jacobson radicals and quotient lattices.

Ideals and filters are membership predicates over element masks, optionally
carrying a finite generator list.  On a finite host every ideal is principal,
but predicate-only handles (Jacobson radicals, conductors) keep the defining
formula and only fall back to enumeration when asked for their members.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

from .lattice import Element, Lattice, LatticeError, Presentation, Relation


class _Subset:
    kind = "subset"

    def __init__(self, host: Lattice, member: Callable[[int], bool],
                 generators: Sequence[Element] | None = None):
        self.host = host
        self._member = member
        self.generators = None if generators is None else [host.coerce(g) for g in generators]
        self._members: frozenset[int] | None = None

    def contains_mask(self, m: int) -> bool:
        if self._members is not None:
            return m in self._members
        return self._member(m)

    def __contains__(self, a) -> bool:
        return self.contains_mask(self.host.coerce(a).mask)

    def members(self) -> frozenset[int]:
        if self._members is None:
            self._members = frozenset(m for m in self.host.masks() if self._member(m))
        return self._members

    def elements(self) -> list[Element]:
        ms = self.members()
        return [e for e in self.host.elements() if e.mask in ms]

    def __eq__(self, other):
        if not isinstance(other, _Subset) or other.kind != self.kind:
            return NotImplemented
        return self.host.same_as(other.host) and self.members() == other.members()

    def __hash__(self):
        return hash((self.kind, self.members()))

    def __len__(self):
        return len(self.members())

    def __repr__(self):
        return f"{type(self).__name__}({[str(e) for e in self.elements()]})"


class IdealHandle(_Subset):
    kind = "ideal"

    def top_mask(self) -> int:
        m = 0
        for x in self.members():
            m |= x
        if m not in self.members():
            raise LatticeError("not an ideal: join of members escapes")
        return m

    def top(self) -> Element:
        """Generator of the (principal) ideal on a finite host."""
        if self.generators is not None:
            return self.host.join(*self.generators)
        return self.host.from_mask(self.top_mask())

    def check(self) -> bool:
        ms = self.members()
        if 0 not in ms:
            return False
        for a in ms:
            for b in self.host.masks():
                if self.host.leq_mask(b, a) and b not in ms:
                    return False
            for b in ms:
                if a | b not in ms:
                    return False
        return True


class FilterHandle(_Subset):
    kind = "filter"

    def bottom_mask(self) -> int:
        m = self.host.full
        for x in self.members():
            m &= x
        if m not in self.members():
            raise LatticeError("not a filter: meet of members escapes")
        return m

    def bottom(self) -> Element:
        if self.generators is not None:
            return self.host.meet(*self.generators)
        return self.host.from_mask(self.bottom_mask())

    def check(self) -> bool:
        ms = self.members()
        if self.host.full not in ms:
            return False
        for a in ms:
            for b in self.host.masks():
                if self.host.leq_mask(a, b) and b not in ms:
                    return False
            for b in ms:
                if a & b not in ms:
                    return False
        return True


# construction

def ideal_from(T: Lattice, S: Iterable = ()) -> IdealHandle:
    gens = [T.coerce(s) for s in S]
    top = 0
    for g in gens:
        top |= g.mask
    return IdealHandle(T, lambda m: T.leq_mask(m, top), gens)


def filter_from(T: Lattice, S: Iterable = ()) -> FilterHandle:
    gens = [T.coerce(s) for s in S]
    bot = T.full
    for g in gens:
        bot &= g.mask
    return FilterHandle(T, lambda m: T.leq_mask(bot, m), gens)


def principal_ideal(a: Element) -> IdealHandle:
    return ideal_from(a.lattice, [a])


def principal_filter(a: Element) -> FilterHandle:
    return filter_from(a.lattice, [a])


def whole(T: Lattice) -> IdealHandle:
    return ideal_from(T, [T.top])


def ideal_of_members(T: Lattice, members: Iterable[int]) -> IdealHandle:
    ms = frozenset(members)
    h = IdealHandle(T, lambda m: m in ms)
    h._members = frozenset(m for m in T.masks() if m in ms)
    return h


def filter_of_members(T: Lattice, members: Iterable[int]) -> FilterHandle:
    ms = frozenset(members)
    h = FilterHandle(T, lambda m: m in ms)
    h._members = frozenset(m for m in T.masks() if m in ms)
    return h


def intersect(*hs: _Subset) -> _Subset:
    first = hs[0]
    ms = first.members()
    for h in hs[1:]:
        ms = ms & h.members()
    maker = ideal_of_members if isinstance(first, IdealHandle) else filter_of_members
    return maker(first.host, ms)


def ideal_join(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """The ideal generated by two ideals: ``z <= u | v`` with u in a, v in b."""
    T = a.host
    ua, ub = a.members(), b.members()
    tops = {x | y for x in ua for y in ub}
    return ideal_of_members(T, (m for m in T.masks() if any(T.leq_mask(m, t) for t in tops)))


def filter_meet(f: FilterHandle, g: FilterHandle) -> FilterHandle:
    """The filter generated by two filters: ``z >= u & v``."""
    T = f.host
    bots = {x & y for x in f.members() for y in g.members()}
    return filter_of_members(T, (m for m in T.masks() if any(T.leq_mask(b, m) for b in bots)))


# conductor, difference, Jacobson radical

def conductor(b: IdealHandle, A: Iterable) -> IdealHandle:
    """``(b : A) = {x | a & x in b for every a in A}``."""
    T = b.host
    amasks = [T.coerce(a).mask for a in A]
    return IdealHandle(T, lambda m: all(b.contains_mask(a & m) for a in amasks))


def difference(f: FilterHandle, f2: FilterHandle) -> FilterHandle:
    """``f \\ f2 = {x | a | x in f for every a in f2}``."""
    T = f.host
    if f2.generators is not None:
        # for a finitely generated filter the generators suffice
        quant = [g.mask for g in f2.generators]
    else:
        quant = list(f2.members())
    return FilterHandle(T, lambda m: all(f.contains_mask(a | m) for a in quant))


def _comaximal_with(J: IdealHandle) -> set[int]:
    T = J.host
    full = T.full
    jm = list(J.members())
    return {x for x in T.masks() if any(z | x == full for z in jm)}


def jacobson(J: IdealHandle) -> IdealHandle:
    """Jacobson radical: a such that ``a | x = 1`` forces some z in J with ``z | x = 1``."""
    T = J.host
    full = T.full
    ok = _comaximal_with(J)
    masks = T.masks()
    members = [a for a in masks if all(x in ok for x in masks if a | x == full)]
    return ideal_of_members(T, members)


def jacobson_zero(T: Lattice) -> IdealHandle:
    return jacobson(ideal_from(T))


def is_weakly_jacobson(T: Lattice) -> bool:
    for a in T.elements():
        p = principal_ideal(a)
        if jacobson(p).members() != p.members():
            return False
    return True


# quotients and maps

class LatticeMap:
    """A lattice morphism given by the images of the source generators."""

    def __init__(self, source: Lattice, target: Lattice, images: dict[str, Element] | None = None):
        self.source = source
        self.target = target
        self.identity = images is None
        if images is None:
            if source.generators != target.generators:
                raise LatticeError("identity map needs equal generator lists")
            self.images = None
        else:
            self.images = {g: target.coerce(images[g]) for g in source.generators}

    def __call__(self, a) -> Element:
        a = self.source.coerce(a)
        if self.identity:
            return self.target._make(a.terms)
        out = self.target.bottom
        for t in a.terms:
            out = self.target.join(out, self.target.meet(
                *(self.images[self.source.generators[i]] for i in t)))
        return out

    def map_mask(self, m: int) -> int:
        return self(self.source.from_mask(m)).mask

    def is_morphism(self) -> bool:
        """Every source relation holds after substituting the images."""
        for r in self.source.presentation.relations:
            lhs = self.target.top
            for c in r.meet:
                for g in c:
                    lhs = self.target.meet(lhs, self(self.source.gen(g)))
            rhs = self.target.join(*(self(self.source.gen(g)) for g in r.join)) \
                if r.join else self.target.bottom
            if not self.target.leq(lhs, rhs):
                return False
        return True

    def is_surjective(self) -> bool:
        image = {self.map_mask(m) for m in self.source.masks()}
        return len(image) == len(self.target.masks())

    def compose(self, other: LatticeMap) -> LatticeMap:
        """``other`` after ``self``."""
        return LatticeMap(self.source, other.target,
                          {g: other(self(self.source.gen(g))) for g in self.source.generators})


class QuotientMap(LatticeMap):
    """Canonical projection onto a quotient on the same generators.

    ``kind`` is one of ``ideal-kill``, ``filter-kill``, ``pair`` or ``preorder``.
    """

    def __init__(self, source: Lattice, target: Lattice, kind: str,
                 killed: Sequence[Element] = (), raised: Sequence[Element] = ()):
        super().__init__(source, target)
        self.kind = kind
        self.killed = list(killed)
        self.raised = list(raised)
        pos = {v: k for k, v in enumerate(source.models)}
        self._bits = [pos[v] for v in target.models]

    def map_mask(self, m: int) -> int:
        out = 0
        for k, b in enumerate(self._bits):
            if m >> b & 1:
                out |= 1 << k
        return out

    def __call__(self, a) -> Element:
        return self.target._make(self.source.coerce(a).terms)

    def lift(self, y) -> Element:
        """Some preimage of ``y`` (same normal form read in the source)."""
        y = self.target.coerce(y)
        return self.source._make(y.terms)

    def kernel(self) -> IdealHandle:
        return ideal_of_members(self.source, (m for m in self.source.masks() if self.map_mask(m) == 0))


def _dnf_to_cnf(a: Element) -> list[frozenset]:
    clauses = {frozenset()}
    for t in a.terms:
        clauses = {c | {g} for c in clauses for g in t}
    out: list[frozenset] = []
    for c in sorted(clauses, key=len):
        if not any(o <= c for o in out):
            out.append(c)
    return out


def quotient(T: Lattice, J: Iterable = (), U: Iterable = ()) -> tuple[Lattice, QuotientMap]:
    """``T/(J = 0, U = 1)`` by adding relations ``x <= 0`` and ``1 <= y``."""
    J = [T.coerce(x) for x in J]
    U = [T.coerce(y) for y in U]
    g = T.generators
    extra = []
    for x in J:
        for t in x.terms:
            extra.append(Relation.leq([g[i] for i in sorted(t)], []))
    for y in U:
        for c in _dnf_to_cnf(y):
            extra.append(Relation.leq([], [g[i] for i in sorted(c)]))
    target = Lattice(Presentation(T.generators, T.presentation.relations + tuple(extra)),
                     T.max_elements)
    kind = "pair" if J and U else "filter-kill" if U else "ideal-kill"
    return target, QuotientMap(T, target, kind, J, U)


def quotient_by_preorder(T: Lattice, pairs: Iterable[tuple[int, int]]) -> tuple[Lattice, QuotientMap]:
    """Quotient forcing ``a <= b`` for each mask pair; keeps models respecting all pairs."""
    bad = 0
    for a, b in pairs:
        bad |= a & ~b
    keep = [v for k, v in enumerate(T.models) if not bad >> k & 1]
    target = T.restrict(keep)
    return target, QuotientMap(T, target, "preorder")


def prop121_leq(T: Lattice, J: Sequence, U: Sequence, a, b) -> bool:
    """``a <= b`` in ``T/(J=0, U=1)`` via finite parts: ``a & /\\U0 <= b | \\/J0``."""
    J = [T.coerce(x) for x in J]
    U = [T.coerce(y) for y in U]
    a, b = T.coerce(a), T.coerce(b)
    for r in range(len(J) + 1):
        for J0 in combinations(J, r):
            right = T.join(b, *J0)
            for s in range(len(U) + 1):
                for U0 in combinations(U, s):
                    if T.leq(T.meet(a, *U0), right):
                        return True
    return False


def congruent(I: IdealHandle, a, b) -> bool:
    """``a == b`` modulo ``I = 0``: some x in I with ``a | x == b | x``."""
    T = I.host
    a, b = T.coerce(a).mask, T.coerce(b).mask
    return any(a | x == b | x for x in I.members())


def ideal_image(pi: LatticeMap, I: IdealHandle) -> IdealHandle:
    if not I.host.same_as(pi.source):
        raise LatticeError("ideal does not live on the source of the map")
    if I.generators is not None:
        return ideal_from(pi.target, [pi(g) for g in I.generators])
    return ideal_of_members(pi.target, {pi.map_mask(m) for m in I.members()})


def ideal_preimage(pi: LatticeMap, I: IdealHandle) -> IdealHandle:
    if not I.host.same_as(pi.target):
        raise LatticeError("ideal does not live on the target of the map")
    return IdealHandle(pi.source, lambda m: I.contains_mask(pi.map_mask(m)))


def filter_preimage(pi: LatticeMap, F: FilterHandle) -> FilterHandle:
    if not F.host.same_as(pi.target):
        raise LatticeError("filter does not live on the target of the map")
    return FilterHandle(pi.source, lambda m: F.contains_mask(pi.map_mask(m)))


def saturation(T: Lattice, J: Sequence) -> IdealHandle:
    """Kernel of ``T -> T/(J = 0)``."""
    return quotient(T, J)[1].kernel()


# coverings and the Chinese remainder construction

def covers_ideals(ideals: Sequence[IdealHandle]) -> bool:
    return intersect(*ideals).members() == frozenset([0])


def covers_filters(filters: Sequence[FilterHandle]) -> bool:
    T = filters[0].host
    return intersect(*filters).members() == frozenset([T.full])


class IncompatibleError(LatticeError):
    def __init__(self, pair):
        super().__init__(f"inputs {pair[0]} and {pair[1]} are not compatible")
        self.pair = pair


def chinese_solve(s: Sequence[Element], x: Sequence[Element]) -> Element:
    """Solve ``y == x_i`` modulo ``s_i = 0`` for all i; returns ``/\\(x_i | s_i)``."""
    if len(s) != len(x) or not s:
        raise LatticeError("need equally many moduli and residues")
    T = s[0].lattice
    s = [T.coerce(e) for e in s]
    x = [T.coerce(e) for e in x]
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            m = s[i].mask | s[j].mask
            if x[i].mask | m != x[j].mask | m:
                raise IncompatibleError((i, j))
    return T.meet(*(T.join(xi, si) for xi, si in zip(x, s)))


def section(pi: QuotientMap) -> Callable[[Element], Element]:
    """The unique section ``y -> x | s`` of a principal ideal quotient."""
    if pi.kind != "ideal-kill":
        raise LatticeError("section needs a quotient by a principal ideal")
    s = pi.source.join(*pi.killed) if pi.killed else pi.source.bottom

    def phi(y):
        return pi.source.join(pi.lift(y), s)

    phi.s = s
    return phi
