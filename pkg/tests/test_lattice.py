import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heitdim import boolean, chain, enumerate_elements, free_lattice, isomorphic, opposite, present
from heitdim.corpus import random_presentation
from heitdim.ideals import prop121_leq, quotient
from heitdim.lattice import EnumerationLimitError, dual_element, Lattice, LatticeError, Relation, is_trivial


def monotone_functions(n):
    """Truth tables of monotone Boolean functions on n variables, built as pairs f0 <= f1."""
    if n == 0:
        return [(0,), (1,)]
    smaller = monotone_functions(n - 1)
    return [lo + hi for lo in smaller for hi in smaller if all(a <= b for a, b in zip(lo, hi))]


@pytest.mark.parametrize("n,count", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)])
def test_free_lattice_sizes_match_monotone_count(n, count):
    assert len(monotone_functions(n)) == count
    assert len(free_lattice(n)) == count


def test_free_examples(free2):
    x, y = free2["x"], free2["y"]
    assert free2.leq(x & y, x | y)
    assert not free2.leq(x, y)
    assert (x | y) & x == x
    assert len(((x | y) & (x | y)).terms) == 2
    assert x | free2.bottom == x
    T = present(["x", "y"], [Relation.leq(["x", "y"], [])])
    assert T.leq(T["x"] & T["y"], T.bottom)


def test_chain_presentation_has_five_elements():
    T = present(["g1", "g2", "g3"], [Relation.leq(["g1"], ["g2"]), Relation.leq(["g2"], ["g3"])])
    assert len(enumerate_elements(T)) == 5


def test_present_rejects_bad_input():
    with pytest.raises(LatticeError):
        present(["x", "x"])
    with pytest.raises(LatticeError):
        present(["x"], [Relation.leq(["y"], [])])
    with pytest.raises(LatticeError):
        present(["x"]).parse("q")


def test_triviality():
    assert is_trivial(present(["x"], [Relation.leq(["x"], []), Relation.leq([], ["x"])]))
    assert not is_trivial(free_lattice(0))
    T = present(["x", "y"], [Relation.leq(["x"], []), Relation.leq(["y"], []),
                             Relation.leq([], ["x"])])
    assert is_trivial(T)
    assert T.leq(T.top, T.bottom)


def test_opposite(chain3):
    assert isomorphic(opposite(opposite(chain3)), chain3)
    two = free_lattice(0)
    assert isomorphic(opposite(two), two)
    # in 0 < c1 < c2 < 1 the coatom c2 becomes the atom of the opposite
    C = chain(4)
    op = opposite(C)
    atoms = [e for e in op.elements()
             if e != op.bottom and all(f in (op.bottom, e) for f in op.elements() if op.leq(f, e))]
    assert atoms == [op["c2"]]
    T = free_lattice(2)
    Top = opposite(T)
    for a, b in product(T.elements(), repeat=2):
        assert T.leq(a, b) == Top.leq(dual_element(b, Top), dual_element(a, Top))


def test_enumeration_ceiling():
    T = Lattice(free_lattice(5).presentation, max_elements=100)
    with pytest.raises(EnumerationLimitError):
        T.elements()


def test_chain_sizes():
    for n in range(1, 8):
        assert len(chain(n)) == n
    assert len(boolean(3)) == 8


# properties over random presentations

presentations = st.integers(0, 10**6).map(lambda s: Lattice(random_presentation(random.Random(s))))


def _pick(T, data, label):
    els = T.elements()
    return els[data.draw(st.integers(0, len(els) - 1), label=label)]


@settings(max_examples=80, deadline=None)
@given(presentations, st.data())
def test_lattice_laws(T, data):
    a, b, c = (_pick(T, data, k) for k in "abc")
    assert T.leq(a, a)
    if T.leq(a, b) and T.leq(b, a):
        assert a == b
    if T.leq(a, b) and T.leq(b, c):
        assert T.leq(a, c)
    assert T.leq(a, b) == (a & b == a) == (a | b == b)
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert a & (a | b) == a and a | (a & b) == a
    assert a & T.top == a and a | T.bottom == a


@settings(max_examples=80, deadline=None)
@given(presentations, st.data())
def test_canonical_forms(T, data):
    a = _pick(T, data, "a")
    again = T.from_mask(a.mask)
    assert again.terms == a.terms
    assert T.parse(str(a)) == a
    terms = list(a.terms)
    assert not any(s < t for s in terms for t in terms)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_model_order_matches_finite_part_criterion(seed, data):
    """Order in free(n)/(J=0, U=1) decided by models agrees with the finite-part criterion."""
    rng = random.Random(seed)
    F = free_lattice(rng.randint(1, 3))
    els = F.elements()
    J = rng.sample(els, rng.randint(0, 2))
    U = rng.sample(els, rng.randint(0, 2))
    Q, pi = quotient(F, J, U)
    if len(Q) > 20:
        return
    a, b = _pick(F, data, "a"), _pick(F, data, "b")
    assert Q.leq(pi(a), pi(b)) == prop121_leq(F, J, U, a, b)
