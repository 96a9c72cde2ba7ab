"""Recovering a lattice from principal quotients, and gluing a diagram of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Sequence

from .ideals import LatticeMap, QuotientMap, quotient
from .lattice import Element, Lattice, LatticeError, dual_element, opposite
from .spectra import lattice_from_finite_order


class GlueError(LatticeError):
    def __init__(self, condition: str, where):
        super().__init__(f"gluing condition violated: {condition} at {where}")
        self.condition = condition
        self.where = where


@dataclass
class GlueDiagram:
    """Lattices T_i, T_ij (i<j), T_ijk (i<j<k) with projections and elements s_ij.

    ``proj[(i, j)]`` maps T_i onto T_ij for i != j, ``proj3[(i, j, k)]`` maps
    T_ij onto T_ijk (pair given in index order, k distinct), and ``s[(i, j)]``
    is an element of T_i.
    """

    index: list[Hashable]
    lattices: dict
    pairs: dict = field(default_factory=dict)
    triples: dict = field(default_factory=dict)
    proj: dict = field(default_factory=dict)
    proj3: dict = field(default_factory=dict)
    s: dict = field(default_factory=dict)

    def pair(self, i, j) -> Lattice:
        return self.pairs[frozenset((i, j))]

    def p3(self, i, j, k) -> LatticeMap:
        a, b = sorted((i, j), key=self.index.index)
        return self.proj3[(a, b, k)]


def _is_principal_quotient(f: LatticeMap, s: Element) -> bool:
    """f is onto and identifies exactly the pairs with equal join with s."""
    if not f.is_surjective():
        return False
    S = f.source
    img = {m: f.map_mask(m) for m in S.masks()}
    for a in S.masks():
        for b in S.masks():
            if (img[a] == img[b]) != ((a | s.mask) == (b | s.mask)):
                return False
    return True


def check_diagram(d: GlueDiagram) -> None:
    I = d.index
    for i, j in permutations(I, 2):
        f = d.proj[(i, j)]
        if not f.is_morphism():
            raise GlueError("projection is not a lattice morphism", (i, j))
        if not _is_principal_quotient(f, d.s[(i, j)]):
            raise GlueError("projection is not the quotient by the principal ideal of s_ij", (i, j))
    for i, j, k in permutations(I, 3):
        a = d.proj[(i, j)](d.s[(i, k)])
        b = d.proj[(j, i)](d.s[(j, k)])
        if a != b:
            raise GlueError("pi_ij(s_ik) = pi_ji(s_jk)", (i, j, k))
        if not _is_principal_quotient(d.p3(i, j, k), a):
            raise GlueError("triple projection is not the quotient by pi_ij(s_ik)", (i, j, k))
        Ti = d.lattices[i]
        for m in Ti.masks():
            x = Ti.from_mask(m)
            if d.p3(i, j, k)(d.proj[(i, j)](x)) != d.p3(i, k, j)(d.proj[(i, k)](x)):
                raise GlueError("diagram does not commute", (i, j, k))


def compatible_tuples(d: GlueDiagram) -> list[tuple[int, ...]]:
    """Elements of the projective limit as tuples of masks in index order."""
    I = d.index
    images = {}
    for i, j in permutations(I, 2):
        f = d.proj[(i, j)]
        images[(i, j)] = {m: f.map_mask(m) for m in d.lattices[i].masks()}
    partial = [()]
    for pos, j in enumerate(I):
        nxt = []
        for t in partial:
            for m in d.lattices[j].masks():
                if all(images[(j, I[p])][m] == images[(I[p], j)][t[p]] for p in range(pos)):
                    nxt.append(t + (m,))
        partial = nxt
    return partial


def _limit(d: GlueDiagram):
    tuples = compatible_tuples(d)
    L, iso = lattice_from_finite_order(
        tuples,
        lambda a, b: tuple(x | y for x, y in zip(a, b)),
        lambda a, b: all(not x & ~y for x, y in zip(a, b)))
    back = {e.mask: t for t, e in iso.items()}
    projections = {}
    for pos, i in enumerate(d.index):
        Ti = d.lattices[i]
        images = {g: Ti.from_mask(back[L.gen(g).mask][pos]) for g in L.generators}
        projections[i] = LatticeMap(L, Ti, images)
    return L, iso, back, projections


def _section(f: LatticeMap, s: Element):
    """y -> x | s for any preimage x of y under f."""
    pre = {}
    for m in f.source.masks():
        pre.setdefault(f.map_mask(m), m)
    return lambda ym: pre[ym] | s.mask


def glue(d: GlueDiagram) -> tuple[Lattice, dict, dict]:
    """Projective limit of a principal-quotient diagram.

    Returns the limit lattice, its projections onto each T_i, and elements s_i
    such that each projection is the quotient by the principal ideal of s_i
    and sends s_j to s_ij.
    """
    check_diagram(d)
    I = d.index
    L, iso, back, proj = _limit(d)
    if len(I) == 1:
        return L, proj, {I[0]: L.bottom}
    s_el = {}
    for i in I:
        coords = tuple(0 if j == i else d.s[(j, i)].mask for j in I)
        if coords not in iso:
            raise GlueError("s_i is not a compatible tuple", i)
        s_el[i] = iso[coords]
    for pos, i in enumerate(I):
        Ti = d.lattices[i]
        # the map T_i -> L from the proof, built from the sections of the pi_ji
        sections = {j: _section(d.proj[(j, i)], d.s[(j, i)]) for j in I if j != i}
        image = set()
        for m in Ti.masks():
            y = tuple(m if j == i else sections[j](d.proj[(i, j)].map_mask(m)) for j in I)
            if y not in iso:
                raise GlueError("section image is not compatible", i)
            if y[pos] != m:
                raise GlueError("projection after section is not the identity", i)
            image.add(iso[y].mask)
        s = s_el[i].mask
        if image != {m for m in L.masks() if not s & ~m}:
            raise GlueError("section image is not the principal filter of s_i", i)
        if not _is_principal_quotient(proj[i], s_el[i]):
            raise GlueError("projection is not the quotient by s_i", i)
        for j in I:
            if j != i and proj[i](s_el[j]) != d.s[(i, j)]:
                raise GlueError("pi_i(s_j) = s_ij", (i, j))
    return L, proj, s_el


def cover_diagram(T: Lattice, s: Sequence) -> GlueDiagram:
    """The diagram of quotients of T by the principal ideals of the s_i."""
    s = [T.coerce(x) for x in s]
    I = list(range(len(s)))
    lat = {i: quotient(T, [s[i]])[0] for i in I}
    d = GlueDiagram(I, lat)
    for i in I:
        for j in I:
            if i < j:
                d.pairs[frozenset((i, j))] = quotient(T, [T.join(s[i], s[j])])[0]
    for i in I:
        for j in I:
            if i != j:
                Tij = d.pair(i, j)
                d.proj[(i, j)] = QuotientMap(lat[i], Tij, "ideal-kill", [lat[i].coerce(s[j])])
                d.s[(i, j)] = lat[i].coerce(s[j])
    for i in I:
        for j in I:
            for k in I:
                if i < j and k not in (i, j):
                    key = frozenset((i, j, k))
                    if key not in d.triples:
                        d.triples[key] = quotient(T, [T.join(s[i], s[j], s[k])])[0]
                    Tij = d.pair(i, j)
                    d.proj3[(i, j, k)] = QuotientMap(Tij, d.triples[key], "ideal-kill",
                                                     [Tij.coerce(s[k])])
    return d


def reconstruct_from_cover(T: Lattice, s: Sequence) -> tuple[Lattice, dict]:
    """Limit of the quotients of T by a covering family of principal ideals.

    Returns the limit lattice and the canonical map from T (mask -> Element);
    raises if the ideals do not cover or the canonical map is not bijective.
    """
    s = [T.coerce(x) for x in s]
    meet = T.meet(*s)
    if meet.mask != 0:
        raise LatticeError("the principal ideals do not cover the lattice")
    d = cover_diagram(T, s)
    L, iso, back, proj = _limit(d)
    pis = [QuotientMap(T, d.lattices[i], "ideal-kill", [s[i]]) for i in d.index]
    phi = {}
    for m in T.masks():
        t = tuple(p.map_mask(m) for p in pis)
        if t not in iso:
            raise LatticeError("canonical map leaves the limit")
        phi[m] = iso[t]
    if len({e.mask for e in phi.values()}) != len(L) or len(phi) != len(L):
        raise LatticeError("canonical map is not bijective")
    for a in T.masks():
        for b in T.masks():
            if T.leq_mask(a, b) != L.leq(phi[a], phi[b]):
                raise LatticeError("canonical map is not an order isomorphism")
    return L, phi


# filter version by duality

def _dual_map(f: LatticeMap, S_op: Lattice, T_op: Lattice) -> LatticeMap:
    return LatticeMap(S_op, T_op, {g: dual_element(f(f.source.gen(g)), T_op)
                                   for g in f.source.generators})


def dual_diagram(d: GlueDiagram) -> GlueDiagram:
    op = {}

    def o(T):
        if id(T) not in op:
            op[id(T)] = opposite(T)
        return op[id(T)]

    e = GlueDiagram(list(d.index), {i: o(T) for i, T in d.lattices.items()},
                    {k: o(T) for k, T in d.pairs.items()},
                    {k: o(T) for k, T in d.triples.items()})
    for key, f in d.proj.items():
        e.proj[key] = _dual_map(f, o(f.source), o(f.target))
    for key, f in d.proj3.items():
        e.proj3[key] = _dual_map(f, o(f.source), o(f.target))
    for (i, j), x in d.s.items():
        e.s[(i, j)] = dual_element(x, o(d.lattices[i]))
    return e


def glue_filters(d: GlueDiagram) -> tuple[Lattice, dict, dict]:
    """Gluing along quotients by principal filters, through the opposite lattices."""
    L_op, proj_op, s_op = glue(dual_diagram(d))
    L = opposite(L_op)
    proj = {i: LatticeMap(L, d.lattices[i], {g: dual_element(p(L_op.gen(g)), d.lattices[i])
                                              for g in L.generators})
            for i, p in proj_op.items()}
    s = {i: dual_element(x, L) for i, x in s_op.items()}
    return L, proj, s
