"""Finitely presented distributive lattices.

A lattice is given by generators and relations ``/\\A <= \\/B``.  Its order is
decided through the two-valued models of the presentation: assignments of
0/1 to the generators satisfying every relation.  Each model is stored as an
integer bitmask over the generators, and an element is identified with the
set of models in which it evaluates to 1 (again a bitmask, this time over the
model list).  Elements are exactly the up-closed sets of models, so ``a <= b``
is plain mask inclusion.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ELEMENTS = 4096
MAX_GENERATORS = 24


class LatticeError(ValueError):
    pass


class EnumerationLimitError(LatticeError):
    """Raised when a lattice has more elements than the enumeration ceiling."""


@dataclass(frozen=True)
class Relation:
    """``meet(conjuncts) <= join(disjuncts)``; empty meet is 1, empty join is 0."""

    meet: tuple[tuple[str, ...], ...]
    join: tuple[str, ...]

    @classmethod
    def make(cls, meet: Iterable[Iterable[str]] = (), join: Iterable[str] = ()) -> Relation:
        return cls(tuple(tuple(c) for c in meet), tuple(join))

    @classmethod
    def leq(cls, lhs: Iterable[str], rhs: Iterable[str]) -> Relation:
        """Single-conjunct shorthand: ``/\\lhs <= \\/rhs``."""
        lhs = tuple(lhs)
        return cls((lhs,) if lhs else (), tuple(rhs))

    def symbols(self) -> set[str]:
        out = set(self.join)
        for c in self.meet:
            out.update(c)
        return out

    def __str__(self):
        left = "&".join(sorted({g for c in self.meet for g in c})) or "1"
        right = "|".join(self.join) or "0"
        return f"{left} <= {right}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise LatticeError("duplicate generator labels")
        known = set(self.generators)
        for r in self.relations:
            unknown = r.symbols() - known
            if unknown:
                raise LatticeError(f"unknown symbol(s) in relation: {sorted(unknown)}")


def _antichain(terms: Iterable[frozenset]) -> frozenset:
    out: list[frozenset] = []
    for t in sorted(set(terms), key=len):
        if not any(o <= t for o in out):
            out.append(t)
    return frozenset(out)


class Element:
    """An element in irredundant disjunctive normal form.

    ``terms`` is an antichain of generator-index sets; the empty antichain is 0
    and the antichain holding the empty set is 1.  Equality is semantic.
    """

    __slots__ = ("lattice", "terms", "mask")

    def __init__(self, lattice: Lattice, terms: frozenset, mask: int):
        self.lattice = lattice
        self.terms = terms
        self.mask = mask

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.mask == other.mask and self.lattice.same_as(other.lattice)

    def __hash__(self):
        return hash(self.mask)

    def __and__(self, other):
        return self.lattice.meet(self, other)

    def __or__(self, other):
        return self.lattice.join(self, other)

    def __le__(self, other):
        return self.lattice.leq(self, other)

    def __str__(self):
        return self.lattice.format_terms(self.terms)

    def __repr__(self):
        return f"Element({self})"


class Lattice:
    """A finitely presented distributive lattice with its model table."""

    def __init__(self, presentation: Presentation, max_elements: int = DEFAULT_MAX_ELEMENTS,
                 _models: Sequence[int] | None = None):
        self.presentation = presentation
        self.generators = presentation.generators
        self.max_elements = max_elements
        n = len(self.generators)
        if n > MAX_GENERATORS:
            raise LatticeError(f"too many generators ({n} > {MAX_GENERATORS})")
        self._index = {g: i for i, g in enumerate(self.generators)}
        self.models = tuple(_models) if _models is not None else self._solve()
        self.full = (1 << len(self.models)) - 1
        self._gen_masks = tuple(
            sum(1 << k for k, v in enumerate(self.models) if v >> i & 1) for i in range(n))
        self.key = (self.generators, self.models)
        self._lock = threading.Lock()
        self._masks: tuple[int, ...] | None = None
        self._elements: list[Element] | None = None
        self._mask_index: dict[int, int] | None = None

    # models

    def _relation_masks(self, rel: Relation) -> tuple[int, int]:
        lhs = 0
        for c in rel.meet:
            for g in c:
                lhs |= 1 << self._index[g]
        rhs = 0
        for g in rel.join:
            rhs |= 1 << self._index[g]
        return lhs, rhs

    def _solve(self) -> tuple[int, ...]:
        n = len(self.generators)
        a = np.arange(1 << n, dtype=np.int64)
        ok = np.ones(a.shape, dtype=bool)
        for rel in self.presentation.relations:
            lhs, rhs = self._relation_masks(rel)
            ok &= ~(((a & lhs) == lhs) & ((a & rhs) == 0))
        return tuple(int(v) for v in a[ok])

    def same_as(self, other: Lattice) -> bool:
        return self is other or self.key == other.key

    def is_trivial(self) -> bool:
        return not self.models

    # element construction

    def gen(self, label: str) -> Element:
        try:
            i = self._index[label]
        except KeyError:
            raise LatticeError(f"foreign generator {label!r}") from None
        return self._make(frozenset([frozenset([i])]))

    def __getitem__(self, label: str) -> Element:
        return self.gen(label)

    @property
    def top(self) -> Element:
        return Element(self, frozenset([frozenset()]), self.full)

    @property
    def bottom(self) -> Element:
        return Element(self, frozenset(), 0)

    def term_mask(self, term: Iterable[int]) -> int:
        m = self.full
        for i in term:
            m &= self._gen_masks[i]
        return m

    def _make(self, terms: Iterable[frozenset]) -> Element:
        live = []
        mask = 0
        for t in terms:
            tm = self.term_mask(t)
            if tm:
                live.append(t)
                mask |= tm
        return Element(self, _antichain(live), mask)

    def from_terms(self, terms: Iterable[Iterable]) -> Element:
        """Build an element from meet terms given by labels or indices."""
        out = []
        for t in terms:
            idx = []
            for g in t:
                if isinstance(g, str):
                    if g not in self._index:
                        raise LatticeError(f"foreign generator {g!r}")
                    idx.append(self._index[g])
                else:
                    if not 0 <= g < len(self.generators):
                        raise LatticeError(f"generator index {g} out of range")
                    idx.append(g)
            out.append(frozenset(idx))
        return self._make(out)

    def from_mask(self, mask: int) -> Element:
        """The element whose model set is ``mask`` (must be up-closed)."""
        if mask & ~self.full:
            raise LatticeError("mask has bits outside the model table")
        terms = set()
        for k in range(len(self.models)):
            if mask >> k & 1:
                t = {i for i in range(len(self.generators)) if self.models[k] >> i & 1}
                # shorten the term as long as it stays below the target
                for i in sorted(t, reverse=True):
                    if not self.term_mask(t - {i}) & ~mask:
                        t.discard(i)
                terms.add(frozenset(t))
        # drop terms implied by another term under the relations
        ordered = sorted(terms, key=lambda t: (len(t), sorted(t)))
        kept = []
        for t in ordered:
            tm = self.term_mask(t)
            if not any(not tm & ~self.term_mask(o) for o in kept):
                kept = [o for o in kept if self.term_mask(o) & ~tm]
                kept.append(t)
        e = self._make(kept)
        if e.mask != mask:
            raise LatticeError("mask is not an up-closed set of models")
        return e

    def _own(self, a: Element) -> Element:
        if a.lattice is self or a.lattice.same_as(self):
            return a
        if a.lattice.generators == self.generators:
            # same generator set, different models: reinterpret
            return self._make(a.terms)
        raise LatticeError("element belongs to a different lattice")

    def coerce(self, a) -> Element:
        if isinstance(a, Element):
            return self._own(a)
        if isinstance(a, str):
            return self.parse(a)
        raise TypeError(f"cannot interpret {a!r} as an element")

    # operations

    def leq_mask(self, a: int, b: int) -> bool:
        return not (a & ~b)

    def leq(self, a: Element, b: Element) -> bool:
        return self.leq_mask(self._own(a).mask, self._own(b).mask)

    def eq(self, a: Element, b: Element) -> bool:
        return self._own(a).mask == self._own(b).mask

    def meet(self, *xs: Element) -> Element:
        terms = {frozenset()}
        for x in xs:
            x = self._own(x)
            terms = {s | t for s in terms for t in x.terms}
        return self._make(terms)

    def join(self, *xs: Element) -> Element:
        terms = set()
        for x in xs:
            terms |= self._own(x).terms
        return self._make(terms)

    # enumeration

    def masks(self) -> tuple[int, ...]:
        """All element masks, sorted by (size, value); built once."""
        if self._masks is None:
            with self._lock:
                if self._masks is None:
                    self._masks = self._enumerate()
                    self._mask_index = {m: i for i, m in enumerate(self._masks)}
        return self._masks

    def _enumerate(self) -> tuple[int, ...]:
        meets = {self.full}
        for gm in self._gen_masks:
            meets |= {m & gm for m in meets}
        elems = {0}
        for m in sorted(meets):
            elems |= {e | m for e in elems}
            if len(elems) > self.max_elements:
                raise EnumerationLimitError(
                    f"lattice has more than {self.max_elements} elements")
        return tuple(sorted(elems, key=lambda m: (bin(m).count("1"), m)))

    def elements(self) -> list[Element]:
        if self._elements is None:
            elems = [self.from_mask(m) for m in self.masks()]
            with self._lock:
                if self._elements is None:
                    self._elements = elems
        return list(self._elements)

    def index_of(self, a) -> int:
        self.masks()
        m = a if isinstance(a, int) else self._own(a).mask
        return self._mask_index[m]

    def __len__(self):
        return len(self.masks())

    # quotients by model restriction

    def restrict(self, models: Iterable[int]) -> Lattice:
        """The quotient whose models are the given subset of this lattice's models."""
        keep = set(models)
        if not keep <= set(self.models):
            raise LatticeError("restriction must use a subset of the models")
        n = len(self.generators)
        extra = []
        for v in self.models:
            if v not in keep:
                up = tuple(self.generators[i] for i in range(n) if v >> i & 1)
                down = tuple(self.generators[i] for i in range(n) if not v >> i & 1)
                extra.append(Relation.leq(up, down))
        pres = Presentation(self.generators, self.presentation.relations + tuple(extra))
        return Lattice(pres, self.max_elements, _models=sorted(keep))

    def models_of(self, mask: int) -> list[int]:
        return [v for k, v in enumerate(self.models) if mask >> k & 1]

    # display and parsing

    def format_terms(self, terms: frozenset) -> str:
        if not terms:
            return "0"
        parts = []
        for t in sorted(terms, key=lambda t: (len(t), sorted(t))):
            parts.append("&".join(self.generators[i] for i in sorted(t)) if t else "1")
        return " | ".join(parts)

    def parse(self, text: str) -> Element:
        return _Parser(self, text).parse()

    def __repr__(self):
        return (f"Lattice(generators={list(self.generators)}, "
                f"relations={len(self.presentation.relations)}, models={len(self.models)})")


_TOKEN = re.compile(r"\s*(?:(?P<op>[&|()]|∧|∨)|(?P<name>[^\s&|()∧∨]+))")


class _Parser:
    def __init__(self, lattice: Lattice, text: str):
        self.lattice = lattice
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise LatticeError(f"cannot parse {text!r} at {pos}")
            tok = m.group("op") or m.group("name")
            self.tokens.append({"∧": "&", "∨": "|"}.get(tok, tok))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Element:
        e = self.join()
        if self.peek() is not None:
            raise LatticeError(f"trailing input at token {self.peek()!r}")
        return e

    def join(self):
        e = self.meet()
        while self.peek() == "|":
            self.take()
            e = self.lattice.join(e, self.meet())
        return e

    def meet(self):
        e = self.atom()
        while self.peek() == "&":
            self.take()
            e = self.lattice.meet(e, self.atom())
        return e

    def atom(self):
        tok = self.take()
        if tok == "(":
            e = self.join()
            if self.take() != ")":
                raise LatticeError("unbalanced parenthesis")
            return e
        if tok is None or tok in "&|)":
            raise LatticeError(f"unexpected token {tok!r}")
        if tok == "0":
            return self.lattice.bottom
        if tok == "1":
            return self.lattice.top
        return self.lattice.gen(tok)


# constructors

def present(gens: Sequence[str], rels: Iterable[Relation] = (),
            max_elements: int = DEFAULT_MAX_ELEMENTS) -> Lattice:
    return Lattice(Presentation(tuple(gens), tuple(rels)), max_elements)


def free_lattice(n: int, prefix: str = "x") -> Lattice:
    if n < 0:
        raise LatticeError("generator count must be nonnegative")
    if n <= 3 and prefix == "x":
        names = ["x", "y", "z"][:n]
    else:
        names = [f"{prefix}{i}" for i in range(n)]
    return present(names)


def chain(n: int) -> Lattice:
    """The n-element chain 0 < c1 < ... < c_{n-2} < 1."""
    if n < 1:
        raise LatticeError("a chain has at least one element")
    if n == 1:
        return present([], [Relation.leq([], [])])
    gens = [f"c{i}" for i in range(1, n - 1)]
    rels = [Relation.leq([a], [b]) for a, b in zip(gens, gens[1:])]
    return present(gens, rels)


def boolean(k: int) -> Lattice:
    """The Boolean algebra with k atoms a1..ak."""
    gens = [f"a{i}" for i in range(1, k + 1)]
    rels = [Relation.leq([a, b], []) for i, a in enumerate(gens) for b in gens[i + 1:]]
    rels.append(Relation.leq([], gens))
    return present(gens, rels)


def trivial() -> Lattice:
    return present([], [Relation.leq([], [])])


# module-level helpers mirroring the methods

def leq(T: Lattice, a: Element, b: Element) -> bool:
    return T.leq(a, b)


def meet(a: Element, b: Element) -> Element:
    return a.lattice.meet(a, b)


def join(a: Element, b: Element) -> Element:
    return a.lattice.join(a, b)


def is_trivial(T: Lattice) -> bool:
    return T.is_trivial()


def enumerate_elements(T: Lattice, max_elements: int | None = None) -> list[Element]:
    if max_elements is not None and max_elements != T.max_elements:
        T = Lattice(T.presentation, max_elements, _models=T.models)
    return T.elements()


def opposite(T: Lattice) -> Lattice:
    """The order-dual lattice on the same generator labels."""
    rels = []
    for r in T.presentation.relations:
        lhs = sorted({g for c in r.meet for g in c})
        rels.append(Relation.leq(r.join, lhs))
    n = len(T.generators)
    full = (1 << n) - 1
    models = sorted(full & ~v for v in T.models)
    return Lattice(Presentation(T.generators, tuple(rels)), T.max_elements, _models=models)


def dual_element(a: Element, T_op: Lattice) -> Element:
    """The element of ``T_op`` corresponding to ``a``: meets and joins exchanged."""
    res = T_op.top
    for t in a.terms:
        res = T_op.meet(res, T_op.join(*(T_op.gen(a.lattice.generators[i]) for i in t)))
    return res


def hasse_edges(T: Lattice) -> list[tuple[int, int]]:
    """Cover pairs (i, j) of element indices with element i covered by element j."""
    masks = T.masks()
    index = {m: i for i, m in enumerate(masks)}
    edges = []
    for i, m in enumerate(masks):
        for k in range(len(T.models)):
            bit = 1 << k
            if not m & bit and (m | bit) in index:
                edges.append((i, index[m | bit]))
    return edges


def isomorphic(T1: Lattice, T2: Lattice) -> bool:
    """Order isomorphism of the two (finite) element posets."""
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    if len(T1) != len(T2):
        return False
    if len(T1.models) != len(T2.models):
        return False

    def graph(T):
        g = nx.DiGraph()
        g.add_nodes_from(range(len(T)))
        g.add_edges_from(hasse_edges(T))
        return g

    g1, g2 = graph(T1), graph(T2)
    if sorted(d for _, d in g1.in_degree()) != sorted(d for _, d in g2.in_degree()):
        return False
    return DiGraphMatcher(g1, g2).is_isomorphic()
