"""Seeded test corpus: small presentations, named lattices and random posets."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lattice import Lattice, Presentation, Relation, boolean, chain, free_lattice, trivial
from .spectra import FinitePoset

DEFAULT_SEED = 20240601
GENERATOR_NAMES = ("x", "y", "z", "w", "v", "u")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    lattice: Lattice

    @property
    def size(self) -> int:
        return len(self.lattice)


def _random_subset(rng: random.Random, gens, allow_empty=True) -> list[str]:
    while True:
        out = [g for g in gens if rng.random() < 0.5]
        if out or allow_empty:
            return out


def random_relation(rng: random.Random, gens) -> Relation:
    """A random ``/\\(conjuncts) <= \\/(disjuncts)``; the conjuncts are non-empty label sets."""
    conjuncts = [_random_subset(rng, gens, False) for _ in range(rng.randint(0, 2))]
    return Relation.make(conjuncts, _random_subset(rng, gens))


def random_presentation(rng: random.Random, max_gens: int = 3, max_rels: int = 3) -> Presentation:
    n = rng.randint(1, max_gens)
    gens = GENERATOR_NAMES[:n]
    rels = tuple(random_relation(rng, gens) for _ in range(rng.randint(0, max_rels)))
    return Presentation(gens, rels)


def named_lattices(max_gens: int = 3) -> list[CorpusEntry]:
    out = [CorpusEntry("trivial", trivial())]
    out += [CorpusEntry(f"chain{n}", chain(n)) for n in range(2, max_gens + 4)]
    out += [CorpusEntry(f"free{n}", free_lattice(n)) for n in range(0, max_gens + 1)]
    out += [CorpusEntry(f"boolean{k}", boolean(k)) for k in range(1, max_gens + 1)]
    return out


def corpus(seed: int = DEFAULT_SEED, count: int = 200, max_gens: int = 3, max_rels: int = 3,
           include_named: bool = True) -> list[CorpusEntry]:
    """Named lattices followed by ``count`` seeded random presentations.

    Duplicated presentations are allowed; the deciders cache by semantic key.
    """
    rng = random.Random(seed)
    out = named_lattices(max_gens) if include_named else []
    for k in range(count):
        P = random_presentation(rng, max_gens, max_rels)
        out.append(CorpusEntry(f"random{k:03d}", Lattice(P)))
    return out


def distinct(entries: list[CorpusEntry]) -> list[CorpusEntry]:
    """One entry per semantic key (generators and model set), first occurrence kept."""
    seen = set()
    out = []
    for e in entries:
        key = (e.lattice.generators, e.lattice.models)
        if key not in seen:
            seen.add(key)
            out.append(e)
    return out


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> FinitePoset:
    """Random order on n points (transitive closure of a random DAG along 0..n-1)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return FinitePoset.from_pairs([f"p{i}" for i in range(n)], [(perm[i], perm[j]) for i, j in pairs])


def random_posets(seed: int = DEFAULT_SEED, count: int = 40, max_points: int = 8) -> list[FinitePoset]:
    rng = random.Random(seed + 1)
    return [random_poset(rng, rng.randint(0, max_points)) for _ in range(count)]
