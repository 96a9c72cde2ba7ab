from itertools import product

import pytest

from heitdim import boolean, chain, free_lattice, isomorphic, opposite, present
from heitdim.corpus import corpus, distinct
from heitdim.dimension import (brouwer_chain_value, check_complementary, complementary_sequence,
                               dimension, hdim_leq, heitmann_boundary, heitmann_boundary_ideal,
                               heitmann_lattice, heyting_chain_value, iterated_heitmann_membership,
                               iterated_krull_membership, jdim_leq, kdim_leq, krull_boundary_filter,
                               krull_boundary_ideal, lower_boundary, upper_boundary)
from heitdim.ideals import jacobson_zero, quotient
from heitdim.lattice import LatticeError, Relation
from heitdim.spectra import hdim_oracle, jdim_oracle, kdim_oracle

SMALL = [e.lattice for e in distinct(corpus()) if e.size <= 32]


def names(h):
    return {str(e) for e in h.elements()}


def test_krull_boundary_examples(chain3):
    T, m = chain3, chain3["m"]
    for x in (T.top, T.bottom):
        assert len(krull_boundary_ideal(T, x)) == len(T)
        assert len(krull_boundary_filter(T, x)) == len(T)
    assert names(krull_boundary_ideal(T, m)) == {"0", "m"}
    assert names(krull_boundary_filter(T, m)) == {"m", "1"}
    assert upper_boundary(free_lattice(0), free_lattice(0).top)[0].is_trivial()
    assert isomorphic(upper_boundary(T, m)[0], free_lattice(0))
    assert isomorphic(lower_boundary(T, m)[0], free_lattice(0))


def test_krull_ideal_by_definition(free2):
    T = free2
    for x in T.elements():
        expect = {z for z in T.elements()
                  if any(x & y == T.bottom and T.leq(z, x | y) for y in T.elements())}
        assert set(krull_boundary_ideal(T, x).elements()) == expect


def test_kdim_examples(chain3, square, any_chain):
    two = free_lattice(0)
    assert kdim_leq(two, 0, generators=two.elements(), witness=True).holds
    v = kdim_leq(square, 0, witness=True)
    # a_0 is the complement of x_0
    assert v.holds and {(str(xs[0]), str(a[0])) for xs, a in v.witness} == {("a", "b"), ("b", "a")}
    assert not kdim_leq(chain3, 0).holds
    assert kdim_leq(chain3, 0).counterexample == ("m",)
    assert kdim_leq(chain3, 1).holds
    n, C = any_chain
    for strategy in ("global", "upper", "lower"):
        assert kdim_leq(C, n - 2, strategy).holds
        assert not kdim_leq(C, n - 3, strategy).holds
    assert kdim_oracle(C) == n - 2


def test_kdim_errors(chain3):
    with pytest.raises(LatticeError):
        kdim_leq(chain3, -2)
    with pytest.raises(LatticeError):
        kdim_leq(chain3, 0, "sideways")


def test_free_and_boolean_dimensions():
    assert dimension(free_lattice(2)) == 2
    assert dimension(free_lattice(3)) == 3
    assert dimension(boolean(3)) == 0


def _exhaustive_sequence(T, xs, y):
    """Any a-tuple at all satisfying the complementary chain, by brute force."""
    for as_ in product(T.elements(), repeat=len(xs)):
        if check_complementary(T, xs, as_, y):
            return True
    return False


@pytest.mark.parametrize("T", [present(["m"]), chain(4), free_lattice(2)], ids=str)
def test_greedy_sequence_matches_exhaustive_search(T):
    els = T.elements()
    for k in (1, 2):
        for xs in product(els, repeat=k):
            for y in els:
                assert iterated_krull_membership(T, y, xs) == _exhaustive_sequence(T, xs, y)
            seq = complementary_sequence(T, xs)
            if seq is not None:
                assert check_complementary(T, xs, seq)


def test_iterated_krull_examples(chain3):
    T, m = chain3, chain3["m"]
    for xs in ([m], [m, m], [T.top]):
        assert iterated_krull_membership(T, T.bottom, xs)
    two = free_lattice(0)
    assert all(iterated_krull_membership(two, two.top, [x]) for x in two.elements())
    assert not iterated_krull_membership(T, T.top, [m])
    assert iterated_krull_membership(T, T.top, [m, m])


def test_heitmann_lattice_examples(chain3):
    two = free_lattice(0)
    assert isomorphic(heitmann_lattice(two)[0], two)
    He, pi = heitmann_lattice(chain3)
    assert isomorphic(He, two)
    assert pi(chain3["m"]) == He.bottom


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_only_one_is_one_in_heitmann_lattice(T):
    He, pi = heitmann_lattice(T)
    for x in T.elements():
        assert (pi(x) == He.top) == (x == T.top)


def test_jdim_examples(chain3):
    assert jdim_leq(chain3, 0).holds
    trivial = present(["x"], [Relation.leq(["x"], []), Relation.leq([], ["x"])])
    assert jdim_leq(trivial, -1).holds
    assert hdim_leq(trivial, -1).holds


def test_heitmann_boundary_examples(chain3, square):
    T, m = chain3, chain3["m"]
    assert len(heitmann_boundary_ideal(T, m)) == len(T)
    assert len(heitmann_boundary_ideal(T, T.top)) == len(T)
    assert heitmann_boundary(T, m)[0].is_trivial()
    # with J(0) = 0 the two boundary ideals coincide
    assert len(jacobson_zero(square)) == 1
    for x in square.elements():
        assert heitmann_boundary_ideal(square, x) == krull_boundary_ideal(square, x)


def test_hdim_examples(chain3):
    assert hdim_leq(chain3, 0).holds
    assert not hdim_leq(chain3, -1).holds
    assert iterated_heitmann_membership(chain3, chain3.top, [chain3["m"]])
    for xs in ([], [chain3["m"]], [chain3.top, chain3.bottom]):
        assert iterated_heitmann_membership(chain3, chain3.bottom, xs)


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_hdim_strategies_and_zero_level(T):
    for ell in range(-1, 3):
        rec = hdim_leq(T, ell).holds
        assert hdim_leq(T, ell, "iterated").holds == rec
    if not T.is_trivial():
        reduced, _ = quotient(T, jacobson_zero(T).elements())
        assert hdim_leq(T, 0).holds == jdim_leq(T, 0).holds == kdim_leq(reduced, 0).holds


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_dimension_matches_oracles(T):
    assert dimension(T, "kdim") == kdim_oracle(T)
    assert dimension(T, "jdim") == jdim_oracle(T)
    assert dimension(T, "hdim") == hdim_oracle(T)


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_opposite_has_same_dimension(T):
    assert dimension(opposite(T)) == dimension(T)


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_heyting_and_brouwer_chain_forms(T):
    for ell in range(0, 3):
        S = [T.gen(g) for g in T.generators] or [T.bottom]
        tuples = list(product(S, repeat=ell + 1))
        heyting = all(heyting_chain_value(T, xs) == T.top for xs in tuples)
        brouwer = all(brouwer_chain_value(T, xs) == T.bottom for xs in tuples)
        assert heyting == brouwer == kdim_leq(T, ell).holds
