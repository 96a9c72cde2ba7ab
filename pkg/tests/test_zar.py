import random
from math import gcd

import pytest

from heitdim import free_lattice, isomorphic
from heitdim.dimension import heitmann_lattice, krull_boundary_ideal, upper_boundary
from heitdim.ideals import covers_filters, filter_from, ideal_from, jacobson, quotient
from heitdim.rings import integers, mod_n, poly_over_field, prime_field, product_ring, square_zero_ring
from heitdim.zar import (HeitElement, ZarElement, bracket_heitmann_ideal, collapse_witness, hdim_ring_leq,
                         heit_eq, heit_join, heit_meet, heitmann_boundary_ring,
                         jacobson_member, kdim_ring_leq, krull_boundary_gens, krull_boundary_ring,
                         lower_boundary_contains_zero, quotient_heitmann_ideal, ring_kdim_oracle,
                         verify_collapse, zar_lattice_adapter, zar_leq, zariski_lattice)

Z = integers()
TRIVIAL = mod_n(1)


def test_zar_leq_examples():
    assert zar_leq(Z, [0], [])
    assert zar_leq(Z, [2, 3], [6]) and zar_leq(Z, [6], [2]) and zar_leq(Z, [6], [3])
    assert (ZarElement(Z, [2]) & ZarElement(Z, [3])) == ZarElement(Z, [6])
    assert ZarElement(Z, [4]) == ZarElement(Z, [2])
    assert (ZarElement(Z, [2]) | ZarElement(Z, [3])) == ZarElement(Z, [1])
    assert not ZarElement(Z, [2]) <= ZarElement(Z, [3])


def test_jacobson_member_examples():
    A = mod_n(12)
    assert [x for x in A.elements() if jacobson_member(A, x)] == [0, 6]
    assert jacobson_member(A, 6, mode="exhaustive")
    for x in range(-30, 31):
        assert jacobson_member(Z, x) == (x == 0)
    for R in (Z, A, poly_over_field(3), square_zero_ring(2, 1)):
        assert jacobson_member(R, R.zero)


def test_integer_jacobson_shortcut_spot_check():
    """For x != 0 some y makes 1 + xy a non-unit; exhibited by search."""
    for x in range(1, 40):
        assert any(abs(1 + x * y) != 1 for y in range(-3, 4))
    for n in (6, 10, 15):
        A = mod_n(n)
        for x in A.elements():
            assert jacobson_member(Z, x, [n]) == jacobson_member(A, x) == A.ex_jacobson_member(x, [])


def test_heitmann_elements():
    A = mod_n(36)
    meet = heit_meet(A, HeitElement(A, [2]), HeitElement(A, [3]))
    assert heit_eq(A, meet, HeitElement(A, [6]))
    h = HeitElement(A, [5])
    assert heit_eq(A, h, h)
    B = mod_n(12)
    assert heit_eq(B, HeitElement(B, [4]), HeitElement(B, [2]))
    assert heit_eq(B, heit_join(B, HeitElement(B, [2]), HeitElement(B, [3])), HeitElement(B, [1]))
    assert not heit_eq(B, HeitElement(B, [2]), HeitElement(B, [3]))


@pytest.mark.parametrize("n", [12, 36, 60, 210, 360, 997, 1000])
def test_heitmann_meet_is_product(n):
    A = mod_n(n)
    rng = random.Random(n)
    for _ in range(6):
        j1, j2 = rng.randrange(n), rng.randrange(n)
        for x in A.elements():
            both = jacobson_member(A, x, [j1]) and jacobson_member(A, x, [j2])
            assert both == jacobson_member(A, x, [A.mul(j1, j2)])


def test_krull_boundary_rings():
    assert krull_boundary_ring(Z, [1]).is_trivial()
    for x in (2, 6, 9, -4):
        assert len(krull_boundary_ring(Z, [x]).elements()) == abs(x)
    # in Z/4 the conductor of 2 into the nilradical <2> is everything
    assert krull_boundary_ring(mod_n(4), [2]).is_trivial()
    A = mod_n(4)
    assert {x for x in A.elements() if A.mul(x, 2) % 4 in (0, 2)} == set(A.elements())


def test_lower_boundary_examples():
    assert lower_boundary_contains_zero(Z, 0)
    assert not lower_boundary_contains_zero(Z, 2)
    # x = 1 or -1: take a = -x, then 1 + a x = 0
    assert lower_boundary_contains_zero(Z, 1) and lower_boundary_contains_zero(Z, -1)
    assert not any(lower_boundary_contains_zero(Z, x) for x in range(2, 50))
    A = mod_n(12)
    assert lower_boundary_contains_zero(A, 4)
    assert A.mul(4, A.add(1, A.mul(4, 2))) == 0


def test_verify_collapse_examples():
    assert verify_collapse(mod_n(4), [2], [0], [2])
    for R in (Z, mod_n(7), poly_over_field(5)):
        assert verify_collapse(R, [R.zero] * 3, [R.zero] * 3, [1, 1, 1])
    assert not verify_collapse(Z, [2], [0], [1])


def _collapse_by_hand(xs, as_, ms, n=0):
    w = 1
    for x, a, m in reversed(list(zip(xs, as_, ms))):
        w = x ** m * (w + a * x)
    return w % n if n else w


def test_collapse_value_arithmetic():
    rng = random.Random(5)
    for _ in range(200):
        k = rng.randint(1, 3)
        xs = [rng.randint(-20, 20) for _ in range(k)]
        as_ = [rng.randint(-20, 20) for _ in range(k)]
        ms = [rng.randint(0, 3) for _ in range(k)]
        assert verify_collapse(Z, xs, as_, ms) == (_collapse_by_hand(xs, as_, ms) == 0)
        assert verify_collapse(mod_n(36), xs, as_, ms) == (_collapse_by_hand(xs, as_, ms, 36) == 0)


def test_ring_kdim_examples():
    assert kdim_ring_leq(TRIVIAL, -1).holds
    assert kdim_ring_leq(prime_field(5), 0).holds
    assert kdim_ring_leq(mod_n(4), 0).holds
    P = poly_over_field(5)
    v = kdim_ring_leq(P, 1, samples=10, witness=True)
    assert v.holds and len(v.witness) == 10
    refuted = kdim_ring_leq(P, 0, samples=10)
    assert refuted.holds is False
    assert collapse_witness(P, [P.X]) is None
    assert not kdim_ring_leq(Z, 0).holds
    assert kdim_ring_leq(Z, 1).holds


def test_pid_witnesses_verify():
    rng = random.Random(11)
    for _ in range(40):
        xs = [rng.randint(-10**4, 10**4) for _ in range(2)]
        as_, ms = collapse_witness(Z, xs)
        assert _collapse_by_hand(xs, as_, ms) == 0


@pytest.mark.parametrize("A", [mod_n(12), mod_n(30), product_ring(mod_n(2), mod_n(4)),
                               square_zero_ring(2, 2)], ids=lambda A: A.name)
def test_ring_strategies_agree_with_prime_chains(A):
    k = ring_kdim_oracle(A)
    for ell in range(-1, 2):
        expect = k <= ell
        for strategy in ("collapse", "upper", "lower"):
            assert kdim_ring_leq(A, ell, strategy).holds == expect


def test_heitmann_boundary_rings():
    assert heitmann_boundary_ring(Z, [1]).is_trivial()
    for x in (2, 5, 12):
        assert len(heitmann_boundary_ring(Z, [x]).elements()) == x
    assert heitmann_boundary_ring(mod_n(12), [2]).is_trivial()


def test_ring_hdim_examples():
    assert hdim_ring_leq(mod_n(12), 0).holds
    assert hdim_ring_leq(mod_n(12), 0, "bracket").holds
    assert hdim_ring_leq(Z, 1).holds
    assert not hdim_ring_leq(Z, 0).holds
    assert hdim_ring_leq(TRIVIAL, -1).holds


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_bracket_form_matches_quotients(n):
    A = mod_n(n)
    for x in A.elements():
        assert bracket_heitmann_ideal(A, [x]) == quotient_heitmann_ideal(A, [x])
        for y in (1, 2, 3):
            assert bracket_heitmann_ideal(A, [x, y]) == quotient_heitmann_ideal(A, [x, y])


def test_adapter_examples():
    assert isomorphic(zar_lattice_adapter(Z, [0, 1]), free_lattice(0))
    assert isomorphic(zar_lattice_adapter(mod_n(4), [2]), free_lattice(0))
    L = zar_lattice_adapter(Z, [2, 3])
    assert len(L) == 5
    assert L.parse("D[2] | D[3]") == L.top


@pytest.mark.parametrize("n", [12, 30, 36])
def test_adapter_order_matches_zar_leq(n):
    A = mod_n(n)
    pool = [2, 3, 4, 5]
    L = zar_lattice_adapter(A, pool)
    for u in pool:
        for v in pool:
            assert L.leq(L.gen(f"D[{u}]"), L.gen(f"D[{v}]")) == zar_leq(A, [u], [v])


@pytest.mark.parametrize("n", [12, 30, 36, 60])
def test_quotient_ring_zariski_lattice(n):
    """Zar(A/<j>) is Zar A with D(j) set to 0."""
    A = mod_n(n)
    Zar = zariski_lattice(A)
    for j in A.elements():
        lhs = zariski_lattice(A.quotient([j])).lattice
        assert isomorphic(lhs, upper_quotient(Zar, j))


def upper_quotient(Zar, j):
    return quotient(Zar.lattice, [Zar.D(j)])[0]


@pytest.mark.parametrize("n", [12, 30, 36, 60])
def test_lattice_jacobson_is_ring_jacobson(n):
    A = mod_n(n)
    Zar = zariski_lattice(A)
    L = Zar.lattice
    for j in A.elements():
        lattice_side = jacobson(ideal_from(L, [Zar.D(j)]))
        ring_side = [x for x in A.elements() if jacobson_member(A, x, [j])]
        assert lattice_side.top() == Zar.D(*ring_side)


@pytest.mark.parametrize("n", [12, 36])
def test_boundary_ideals_correspond(n):
    A = mod_n(n)
    Zar = zariski_lattice(A)
    for j in A.elements():
        assert krull_boundary_ideal(Zar.lattice, Zar.D(j)).top() == Zar.D(*krull_boundary_gens(A, [j]))


@pytest.mark.parametrize("n", [12, 30, 36])
def test_one_minus_filter_is_one_plus_multiples(n):
    A = mod_n(n)
    Zar = zariski_lattice(A)
    L = Zar.lattice
    for x in A.elements():
        for y in A.elements():
            comaximal = L.leq(L.top, Zar.D(x) | Zar.D(y))
            hit = any(L.leq(Zar.D(A.add(1, A.mul(a, x))), Zar.D(y)) for a in A.elements())
            assert comaximal == hit


@pytest.mark.parametrize("n", [12, 30])
def test_filter_cover_iff_comaximal_monoids(n):
    A = mod_n(n)
    Zar = zariski_lattice(A)
    L = Zar.lattice
    rng = random.Random(n)
    for _ in range(40):
        ss = [rng.randrange(n) for _ in range(rng.randint(1, 3))]
        cover = covers_filters([filter_from(L, [Zar.D(s)]) for s in ss])
        powers = [A.pow(s, rng.randint(1, 4)) for s in ss]
        assert cover == A.one_in_ideal(powers)


@pytest.mark.parametrize("n", [12, 30, 36, 60])
def test_heitmann_boundary_quotient_map(n):
    """Heit(A/H(j)) receives an order map from the Krull boundary of J(j) in Heit A.

    It is onto because every D(x mod H(j)) is hit.
    """
    A = mod_n(n)
    Zar = zariski_lattice(A)
    He, pi = heitmann_lattice(Zar.lattice)
    for j in A.elements():
        B, rho = upper_boundary(He, pi(Zar.D(j)))
        Q = heitmann_boundary_ring(A, [j])
        target = heitmann_lattice(zariski_lattice(Q).lattice)
        ZQ, sigma = zariski_lattice(Q), target[1]
        img = lambda x: rho(pi(Zar.D(x)))
        for x in A.elements():
            for y in A.elements():
                if B.leq(img(x), img(y)):
                    assert target[0].leq(sigma(ZQ.D(Q.normalize(x))), sigma(ZQ.D(Q.normalize(y))))
        assert gcd(n, Q.modulus) == Q.modulus


@pytest.mark.parametrize("n", [12, 36])
def test_boundary_filter_is_the_monoid_filter(n):
    """Lattice boundary filter of D(x) against the filter of the monoid x^k (1 + a x)."""
    from heitdim.dimension import krull_boundary_filter
    A = mod_n(n)
    Zar = zariski_lattice(A)
    L = Zar.lattice
    for x in A.elements():
        monoid = {A.mul(p, A.add(1, A.mul(a, x))) for p in A.powers(x) for a in A.elements()}
        lattice_side = krull_boundary_filter(L, Zar.D(x))
        for z in L.elements():
            assert (z in lattice_side) == any(L.leq(Zar.D(s), z) for s in monoid)
