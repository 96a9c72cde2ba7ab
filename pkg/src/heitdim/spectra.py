"""Brute-force classical semantics of finite lattices.

Prime ideals are the kernels of the two-valued models.  Everything here is
computed by enumeration over prime points and element sets, and serves as
ground truth for the constructive deciders in ``dimension``.

Duality convention: the spectrum of the lattice of down-sets of a finite poset
P is identified with P itself, the point p corresponding to the prime ideal of
down-sets not containing p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from . import ideals
from .ideals import IdealHandle, QuotientMap, conductor, ideal_from, ideal_of_members, quotient
from .lattice import Lattice, LatticeError, Relation, isomorphic, present


@dataclass(frozen=True)
class PrimePoint:
    """A prime ideal given as a bitset over the host's enumerated elements."""

    model: int
    ideal: int
    index: int  # position of the model in the host's model table

    def contains_mask(self, m: int) -> bool:
        return not m >> self.index & 1


@dataclass
class SpectrumPoset:
    host: Lattice
    points: list[PrimePoint]
    order: list[list[bool]] = field(default_factory=list)

    def __post_init__(self):
        if not self.order:
            self.order = [[(p.ideal & ~q.ideal) == 0 for q in self.points] for p in self.points]

    def __len__(self):
        return len(self.points)

    def leq(self, i: int, j: int) -> bool:
        return self.order[i][j]

    def strict_pairs(self) -> list[tuple[int, int]]:
        n = len(self.points)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.order[i][j]]

    def covers(self) -> list[tuple[int, int]]:
        pairs = self.strict_pairs()
        strict = set(pairs)
        n = len(self.points)
        return [(i, j) for i, j in pairs
                if not any((i, k) in strict and (k, j) in strict for k in range(n))]

    def as_poset(self) -> FinitePoset:
        labels = [f"p{i}" for i in range(len(self.points))]
        return FinitePoset(labels, self.order)

    def kernel_generators(self, i: int) -> list[str]:
        v = self.points[i].model
        return [g for k, g in enumerate(self.host.generators) if not v >> k & 1]

    def to_json(self) -> dict:
        return {
            "points": [{"id": i, "kernel_generators": self.kernel_generators(i),
                        "size": bin(p.ideal).count("1")} for i, p in enumerate(self.points)],
            "order": [list(pair) for pair in self.strict_pairs()],
        }

    def to_dot(self, name: str = "spectrum") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(len(self.points)):
            label = "{" + ",".join(self.kernel_generators(i)) + "}"
            lines.append(f'  p{i} [label="{label}"];')
        for i, j in self.covers():
            lines.append(f"  p{i} -> p{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _kernel_bits(T: Lattice, k: int) -> int:
    out = 0
    for i, m in enumerate(T.masks()):
        if not m >> k & 1:
            out |= 1 << i
    return out


def prime_ideals(T: Lattice) -> SpectrumPoset:
    pts = [PrimePoint(v, _kernel_bits(T, k), k) for k, v in enumerate(T.models)]
    return SpectrumPoset(T, pts)


def spectrum_subset(S: SpectrumPoset, pts: Sequence[PrimePoint]) -> SpectrumPoset:
    return SpectrumPoset(S.host, list(pts))


def maximal_ideals(T: Lattice) -> list[PrimePoint]:
    S = prime_ideals(T)
    n = len(S)
    return [S.points[i] for i in range(n)
            if not any(j != i and S.order[i][j] for j in range(n))]


def minimal_primes(T: Lattice) -> list[PrimePoint]:
    S = prime_ideals(T)
    n = len(S)
    return [S.points[i] for i in range(n)
            if not any(j != i and S.order[j][i] for j in range(n))]


def longest_chain(order: list[list[bool]]) -> int:
    """Length (edges) of the longest strict chain; -1 for the empty poset."""
    n = len(order)
    if n == 0:
        return -1
    below = [[j for j in range(n) if j != i and order[j][i]] for i in range(n)]
    size = [sum(row) for row in zip(*order)]  # number of points below, ranks a topo order
    depth = [0] * n
    for i in sorted(range(n), key=lambda i: size[i]):
        depth[i] = max((depth[j] + 1 for j in below[i]), default=0)
    return max(depth)


def kdim_oracle(T: Lattice) -> int:
    return longest_chain(prime_ideals(T).order)


def jacobson_oracle(T: Lattice, J: IdealHandle | None = None) -> IdealHandle:
    """Intersection of the maximal ideals containing J."""
    if T.is_trivial():
        raise LatticeError("the trivial lattice has no maximal ideals")
    if J is None:
        J = ideal_from(T)
    jm = J.members()
    masks = T.masks()
    members = set(masks)
    for p in maximal_ideals(T):
        if all(p.contains_mask(m) for m in jm):
            members &= {m for m in masks if p.contains_mask(m)}
    return ideal_of_members(T, members)


def point_ideal(T: Lattice, p: PrimePoint) -> IdealHandle:
    return ideal_of_members(T, (m for m in T.masks() if p.contains_mask(m)))


def jspec_points(T: Lattice) -> list[PrimePoint]:
    if T.is_trivial():
        return []
    out = []
    for p in prime_ideals(T).points:
        P = point_ideal(T, p)
        if jacobson_oracle(T, P).members() == P.members():
            out.append(p)
    return out


def D(T: Lattice, a) -> frozenset[int]:
    """The basic open set of a: model indices of primes not containing a."""
    m = T.coerce(a).mask if not isinstance(a, int) else a
    return frozenset(k for k in range(len(T.models)) if m >> k & 1)


def patch_closure(T: Lattice, Z: Iterable[PrimePoint]) -> tuple[Lattice, QuotientMap]:
    """Quotient by ``a <= b`` whenever ``D(a) & Z <= D(b) & Z``."""
    zbits = 0
    for p in Z:
        zbits |= 1 << p.index
    masks = T.masks()
    pairs = [(a, b) for a in masks for b in masks if not (a & zbits) & ~(b & zbits)]
    return ideals.quotient_by_preorder(T, pairs)


def Jspec_lattice(T: Lattice) -> Lattice:
    return patch_closure(T, maximal_ideals(T))[0]


def open_subspace(T: Lattice, a) -> Lattice:
    return quotient(T, [], [a])[0]


def closed_subspace(T: Lattice, b) -> Lattice:
    return quotient(T, [b], [])[0]


def locally_closed_closure(T: Lattice, a, b) -> Lattice:
    a, b = T.coerce(a), T.coerce(b)
    c = conductor(ideal_from(T, [a]), [b])
    return quotient(T, [c.top()], [])[0]


# finite posets and Birkhoff duality

class FinitePoset:
    def __init__(self, labels: Sequence[Hashable], order: Sequence[Sequence[bool]]):
        self.labels = list(labels)
        self.order = [list(map(bool, row)) for row in order]
        n = len(self.labels)
        for i in range(n):
            if not self.order[i][i]:
                raise LatticeError("poset order must be reflexive")
            for j in range(n):
                if i != j and self.order[i][j] and self.order[j][i]:
                    raise LatticeError("poset order must be antisymmetric")
                for k in range(n):
                    if self.order[i][j] and self.order[j][k] and not self.order[i][k]:
                        raise LatticeError("poset order must be transitive")

    @classmethod
    def from_pairs(cls, labels: Sequence[Hashable], pairs: Iterable[tuple[int, int]]) -> FinitePoset:
        n = len(labels)
        order = [[i == j for j in range(n)] for i in range(n)]
        for i, j in pairs:
            order[i][j] = True
        for k in range(n):
            for i in range(n):
                if order[i][k]:
                    for j in range(n):
                        if order[k][j]:
                            order[i][j] = True
        return cls(labels, order)

    @classmethod
    def antichain(cls, n: int) -> FinitePoset:
        return cls.from_pairs([f"p{i}" for i in range(n)], [])

    @classmethod
    def chain(cls, n: int) -> FinitePoset:
        return cls.from_pairs([f"p{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])

    def __len__(self):
        return len(self.labels)

    def maximal(self, idx: Iterable[int]) -> list[int]:
        idx = list(idx)
        return [i for i in idx if not any(j != i and self.order[i][j] for j in idx)]

    def digraph(self):
        import networkx as nx
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        n = len(self)
        g.add_edges_from((i, j) for i in range(n) for j in range(n) if i != j and self.order[i][j])
        return g


def poset_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    from networkx.algorithms.isomorphism import DiGraphMatcher
    if len(P) != len(Q):
        return False
    return DiGraphMatcher(P.digraph(), Q.digraph()).is_isomorphic()


def downset_lattice(P: FinitePoset, labels: Sequence[str] | None = None) -> Lattice:
    """The lattice of down-sets of P, generated by the principal down-sets."""
    n = len(P)
    names = list(labels) if labels is not None else [f"d{i}" for i in range(n)]
    if len(set(names)) != n:
        raise LatticeError("need one distinct label per point")
    rels = []
    for i in range(n):
        for j in range(n):
            if i != j and P.order[i][j]:
                rels.append(Relation.leq([names[i]], [names[j]]))
    for i in range(n):
        for j in range(i + 1, n):
            common = [k for k in range(n) if P.order[k][i] and P.order[k][j]]
            rels.append(Relation.leq([names[i], names[j]], [names[k] for k in P.maximal(common)]))
    rels.append(Relation.leq([], [names[k] for k in P.maximal(range(n))]))
    return present(names, rels)


def spectrum_roundtrip(T: Lattice) -> bool:
    return isomorphic(downset_lattice(prime_ideals(T).as_poset()), T)


def lattice_from_finite_order(elements: Sequence[Hashable], join, leq) -> tuple[Lattice, dict]:
    """Present a finite distributive lattice given extensionally.

    Returns the lattice of down-sets of its join-irreducibles together with the
    isomorphism from the given elements.
    """
    elems = list(elements)
    n = len(elems)
    below = [[j for j in range(n) if j != i and leq(elems[j], elems[i])] for i in range(n)]
    bottoms = [i for i in range(n) if not below[i]]
    if len(bottoms) != 1:
        raise LatticeError("not a bounded lattice")
    irr = []
    for i in range(n):
        if not below[i]:
            continue
        acc = elems[bottoms[0]]
        for j in below[i]:
            acc = join(acc, elems[j])
        if not (leq(acc, elems[i]) and leq(elems[i], acc)):
            irr.append(i)
    P = FinitePoset([elems[i] for i in irr],
                    [[leq(elems[a], elems[b]) for b in irr] for a in irr])
    names = [f"j{k}" for k in range(len(irr))]
    L = downset_lattice(P, names)
    iso = {}
    for i in range(n):
        gens = [L.gen(names[k]) for k, a in enumerate(irr) if leq(elems[a], elems[i])]
        iso[elems[i]] = L.join(*gens) if gens else L.bottom
    if len({e.mask for e in iso.values()}) != n or len(L) != n:
        raise LatticeError("the given order is not a distributive lattice")
    return L, iso


# oracle versions of the Heitmann dimensions

@lru_cache(maxsize=4096)
def _hdim_oracle_key(gens, models, max_elements) -> int:
    from .lattice import Presentation
    T = Lattice(Presentation(gens), max_elements, _models=models)
    return _hdim_oracle(T)


def _hdim_oracle(T: Lattice) -> int:
    if T.is_trivial():
        return -1
    j0 = jacobson_oracle(T).members()
    masks = T.masks()
    best = -1
    for x in masks:
        us = [u for u in masks if (x & u) in j0]
        h = [z for z in masks if any(T.leq_mask(z, x | u) for u in us)]
        B = ideals.quotient_by_preorder(T, [(z, 0) for z in h])[0]
        best = max(best, _hdim_oracle_key(B.generators, B.models, B.max_elements))
    return best + 1


def hdim_oracle(T: Lattice) -> int:
    return _hdim_oracle_key(T.generators, T.models, T.max_elements)


def oracle_heitmann_lattice(T: Lattice) -> Lattice:
    """He(T) built from intersections of maximal ideals instead of the radical formula."""
    if T.is_trivial():
        return T
    masks = T.masks()
    rad = {a: jacobson_oracle(T, ideal_of_members(T, [m for m in masks if T.leq_mask(m, a)])).members()
           for a in masks}
    pairs = [(a, b) for a in masks for b in masks if rad[a] <= rad[b]]
    return ideals.quotient_by_preorder(T, pairs)[0]


def jdim_oracle(T: Lattice) -> int:
    return kdim_oracle(oracle_heitmann_lattice(T))


def spectrum_json(S: SpectrumPoset) -> str:
    return json.dumps(S.to_json(), indent=2, sort_keys=True)
