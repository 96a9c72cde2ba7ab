import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heitdim import chain, free_lattice, isomorphic, opposite
from heitdim.corpus import corpus, distinct
from heitdim.gluing import GlueDiagram, GlueError, cover_diagram, dual_diagram, glue, glue_filters, reconstruct_from_cover
from heitdim.ideals import (IncompatibleError, chinese_solve, conductor, congruent, covers_filters,
                            covers_ideals, difference, filter_from, ideal_from, ideal_image,
                            ideal_preimage, intersect, is_weakly_jacobson, jacobson, principal_ideal,
                            quotient, saturation, section, whole)
from heitdim.lattice import LatticeError, dual_element
from heitdim.spectra import jacobson_oracle

SMALL = [e.lattice for e in distinct(corpus()) if e.size <= 64]


def masks(h):
    return set(h.members())


def test_ideal_from(chain3):
    T, m = chain3, chain3["m"]
    assert masks(ideal_from(T, [])) == {0}
    assert set(ideal_from(T, [m]).elements()) == {T.bottom, m}
    for a in T.elements():
        assert {e for e in T.elements() if T.leq(e, a)} == set(ideal_from(T, [a]).elements())
    with pytest.raises(LatticeError):
        ideal_from(T, [free_lattice(1)["x"]])


def test_conductor(chain3, square):
    T, m = chain3, chain3["m"]
    assert masks(conductor(ideal_from(T, []), [m])) == {0}
    assert conductor(ideal_from(T, []), [T.bottom]) == whole(T)
    for b in square.elements():
        assert conductor(principal_ideal(b), [square.top]) == principal_ideal(b)


def test_difference(chain3):
    T, m = chain3, chain3["m"]
    assert set(difference(filter_from(T, [T.top]), filter_from(T, [m])).elements()) == {T.top}
    for b in T.elements():
        # b <= x | 1 always holds, so nothing is excluded
        assert len(difference(filter_from(T, [b]), filter_from(T, [T.top]))) == len(T)
        assert difference(filter_from(T, [b]), filter_from(T, [T.bottom])) == filter_from(T, [b])


def test_jacobson_examples(chain3, square):
    assert set(jacobson(ideal_from(chain3)).elements()) == {chain3.bottom, chain3["m"]}
    assert masks(jacobson(ideal_from(square))) == {0}
    for T in (chain3, square):
        assert jacobson(whole(T)) == whole(T)
        for a in T.elements():
            J = principal_ideal(a)
            assert (T.top in jacobson(J)) == (T.top in J)


def test_weakly_jacobson(chain3, square):
    assert is_weakly_jacobson(square)
    assert not is_weakly_jacobson(chain3)
    assert is_weakly_jacobson(free_lattice(0))


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_jacobson_matches_maximal_ideal_oracle(T):
    if T.is_trivial():
        with pytest.raises(LatticeError):
            jacobson_oracle(T)
        return
    for a in T.elements():
        assert masks(jacobson(principal_ideal(a))) == set(jacobson_oracle(T, principal_ideal(a)).members())


@pytest.mark.parametrize("T", SMALL, ids=str)
def test_jacobson_of_intersection(T):
    rng = random.Random(len(T))
    els = T.elements()
    for _ in range(15):
        a, b = rng.choice(els), rng.choice(els)
        A, B = principal_ideal(a), principal_ideal(b)
        assert masks(jacobson(intersect(A, B))) == masks(jacobson(A)) & masks(jacobson(B))


def test_quotient_examples(chain3, free2):
    Q, pi = quotient(free2)
    assert isomorphic(Q, free2)
    Q, pi = quotient(chain3, [chain3["m"]])
    assert isomorphic(Q, free_lattice(0))
    assert pi(chain3["m"]) == Q.bottom
    # T/(a = 0) is the up-set of a, via y -> y | a
    for a in free2.elements():
        Q, pi = quotient(free2, [a])
        up = [e for e in free2.elements() if free2.leq(a, e)]
        assert len(Q) == len(up)
        for y in free2.elements():
            assert section(pi)(pi(y)) == y | a


def test_preimage_and_jacobson(chain3):
    Q, pi = quotient(chain3, [chain3["m"]])
    zero = ideal_from(Q)
    assert masks(ideal_preimage(pi, zero)) == masks(saturation(chain3, [chain3["m"]]))
    left = ideal_preimage(pi, jacobson(zero))
    right = jacobson(ideal_preimage(pi, zero))
    assert set(left.elements()) == set(right.elements()) == {chain3.bottom, chain3["m"]}
    with pytest.raises(LatticeError):
        ideal_preimage(pi, ideal_from(chain3))


@pytest.mark.parametrize("T", SMALL[:20], ids=str)
def test_preimage_commutes_with_jacobson(T):
    for a in T.elements():
        Q, pi = quotient(T, [a])
        for b in Q.elements():
            J = principal_ideal(b)
            assert masks(ideal_preimage(pi, jacobson(J))) == masks(jacobson(ideal_preimage(pi, J)))
            assert ideal_image(pi, ideal_preimage(pi, J)) == J


def test_image_of_principal(free2):
    Q, pi = quotient(free2, [free2["x"]])
    for a in free2.elements():
        assert ideal_image(pi, principal_ideal(a)) == principal_ideal(pi(a))


def test_covers(chain3, square):
    a, b = square["a"], square["b"]
    assert covers_ideals([principal_ideal(a), principal_ideal(b)])
    assert covers_ideals([ideal_from(chain3)])
    assert not covers_ideals([principal_ideal(chain3["m"])])
    assert covers_filters([filter_from(square, [a]), filter_from(square, [b])])


def test_chinese_solve(square, free2):
    a, b = square["a"], square["b"]
    y = chinese_solve([a, b], [square.bottom, square.top])
    assert y == a
    assert congruent(principal_ideal(a), y, square.bottom)
    assert congruent(principal_ideal(b), y, square.top)
    x, z = free2["x"], free2["y"]
    c = x | z
    y = chinese_solve([x, z, x & z], [c, c, c])
    for s in (x, z, x & z):
        assert congruent(principal_ideal(s), y, c)
    with pytest.raises(IncompatibleError):
        chinese_solve([a, a], [square.bottom, square.top])


def test_section(chain3, free2):
    Q, pi = quotient(chain3, [chain3["m"]])
    phi = section(pi)
    assert phi(Q.bottom) == chain3["m"] and phi(Q.top) == chain3.top
    for s in free2.elements():
        Q, pi = quotient(free2, [s])
        phi = section(pi)
        assert phi(Q.bottom) == s
        assert all(pi(phi(y)) == y for y in Q.elements())
    with pytest.raises(LatticeError):
        section(quotient(free2, [], [free2["x"]])[1])


def test_glue_single_lattice(free2):
    L, proj, s = glue(GlueDiagram([0], {0: free2}))
    assert isomorphic(L, free2)


def test_glue_square(square):
    d = cover_diagram(square, [square["a"], square["b"]])
    L, proj, s = glue(d)
    assert isomorphic(L, square)
    L2, _ = reconstruct_from_cover(square, [square["a"], square["b"]])
    assert isomorphic(L2, square)
    # filter version: the dual of the ideal cover of the opposite lattice
    op = opposite(square)
    d_op = cover_diagram(op, [dual_element(square["a"], op), dual_element(square["b"], op)])
    L3, _, _ = glue_filters(dual_diagram(d_op))
    assert isomorphic(L3, square)


def test_glue_chain3(chain3):
    d = cover_diagram(chain3, [chain3.bottom, chain3["m"]])
    L, proj, s = glue(d)
    assert isomorphic(L, chain3)


def test_glue_rejects_bad_s_data(square):
    d = cover_diagram(square, [square["a"], square["b"]])
    d.s[(0, 1)] = d.lattices[0].bottom
    with pytest.raises(GlueError):
        glue(d)


def test_reconstruct_requires_cover():
    C = chain(4)
    with pytest.raises(LatticeError):
        reconstruct_from_cover(C, [C["c1"], C["c2"]])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_cover_reconstruction_on_free3(seed):
    rng = random.Random(seed)
    F = free_lattice(3)
    els = F.elements()
    a = rng.choice(els)
    complements = [b for b in els if (a & b) == F.bottom]
    b = rng.choice(complements)
    L, phi = reconstruct_from_cover(F, [a, b])
    assert isomorphic(L, F)
