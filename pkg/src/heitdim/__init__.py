"""Executable lattice and ring dimension theory: distributive lattices given by
generators and relations, their quotients, spectra and Krull/Heitmann dimensions,
and the Zariski/Heitmann lattices of effective commutative rings."""

from .lattice import (Element, Lattice, Presentation, Relation, boolean, chain,
                      enumerate_elements, free_lattice, isomorphic, opposite, present)

__all__ = ["Element", "Lattice", "Presentation", "Relation", "boolean", "chain",
           "enumerate_elements", "free_lattice", "isomorphic", "opposite", "present"]

__version__ = "0.1.0"
