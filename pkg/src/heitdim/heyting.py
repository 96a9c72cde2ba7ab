"""Heyting implication, Brouwer difference, Boolean structure and the Boolean envelope.

All operations are exhaustive searches over the enumerated elements of a
finite host.
"""

from __future__ import annotations

from itertools import product

from .ideals import FilterHandle, IdealHandle, LatticeMap, filter_from, ideal_from
from .lattice import Element, Lattice, LatticeError, Presentation, Relation


class NotHeytingError(LatticeError):
    pass


def _max_below(T: Lattice, ok) -> int:
    cands = [m for m in T.masks() if ok(m)]
    top = 0
    for m in cands:
        top |= m
    if not ok(top):
        raise NotHeytingError("no greatest solution")
    return top


def _min_above(T: Lattice, ok) -> int:
    cands = [m for m in T.masks() if ok(m)]
    if not cands:
        raise NotHeytingError("no solution")
    bot = T.full
    for m in cands:
        bot &= m
    if not ok(bot):
        raise NotHeytingError("no least solution")
    return bot


def implication_mask(T: Lattice, b: int, c: int) -> int:
    return _max_below(T, lambda x: T.leq_mask(x & b, c))


def implication(T: Lattice, b, c) -> Element:
    """The greatest x with ``x & b <= c``."""
    b, c = T.coerce(b), T.coerce(c)
    return T.from_mask(implication_mask(T, b.mask, c.mask))


def negation(T: Lattice, x) -> Element:
    return implication(T, x, T.bottom)


def brouwer_difference_mask(T: Lattice, c: int, b: int) -> int:
    return _min_above(T, lambda z: T.leq_mask(c, z | b))


def brouwer_difference(T: Lattice, c, b) -> Element:
    """The least z with ``c <= z | b``."""
    c, b = T.coerce(c), T.coerce(b)
    return T.from_mask(brouwer_difference_mask(T, c.mask, b.mask))


def brouwer_complement(T: Lattice, x) -> Element:
    return brouwer_difference(T, T.top, x)


def complement(T: Lattice, x) -> Element:
    x = T.coerce(x)
    for m in T.masks():
        if m & x.mask == 0 and m | x.mask == T.full:
            return T.from_mask(m)
    raise LatticeError(f"{x} has no complement")


def is_boolean(T: Lattice) -> bool:
    masks = set(T.masks())
    return all((T.full & ~m) in masks for m in masks)


def heyting_table(T: Lattice) -> dict[tuple[int, int], int]:
    masks = T.masks()
    return {(b, c): implication_mask(T, b, c) for b in masks for c in masks}


def f_min(T: Lattice) -> FilterHandle:
    """Filter generated by the ``x | not x``."""
    gens = [x | negation(T, x) for x in T.elements()]
    return filter_from(T, gens)


def i_max(T: Lattice) -> IdealHandle:
    """Ideal generated by the ``x & (1 - x)``."""
    gens = [x & brouwer_complement(T, x) for x in T.elements()]
    return ideal_from(T, gens)


def _subsets(n: int):
    return range(1 << n)


def boolean_envelope(T: Lattice) -> tuple[Lattice, LatticeMap, LatticeMap]:
    """Boolean algebra generated by T and a dotted copy standing for complements.

    Relations: whenever ``/\\A & /\\E <= \\/B | \\/F`` holds in T (A, B, E, F sets of
    generators), impose ``/\\A & /\\F' <= \\/B | \\/E'``.  Returns the envelope, the
    embedding of T and the embedding of the opposite of T (through the dotted copy).
    """
    g = T.generators
    n = len(g)
    dot = [f"{x}'" for x in g]
    if set(dot) & set(g):
        raise LatticeError("dotted labels collide with existing generators")
    gm = [T.gen(x).mask for x in g]

    def meet_of(s):
        m = T.full
        for i in range(n):
            if s >> i & 1:
                m &= gm[i]
        return m

    def join_of(s):
        m = 0
        for i in range(n):
            if s >> i & 1:
                m |= gm[i]
        return m

    def names(s, lab):
        return [lab[i] for i in range(n) if s >> i & 1]

    rels = []
    for A, E in product(_subsets(n), repeat=2):
        left = meet_of(A) & meet_of(E)
        for B, F in product(_subsets(n), repeat=2):
            if T.leq_mask(left, join_of(B) | join_of(F)):
                rels.append(Relation.leq(names(A, g) + names(F, dot), names(B, g) + names(E, dot)))
    env = Lattice(Presentation(tuple(g) + tuple(dot), tuple(rels)), T.max_elements)
    embed = LatticeMap(T, env, {x: env.gen(x) for x in g})
    from .lattice import opposite
    T_op = opposite(T)
    co_embed = LatticeMap(T_op, env, {x: env.gen(d) for x, d in zip(g, dot)})
    return env, embed, co_embed
