import json
import random
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from heitdim.rings import (PolyRing, RingError, TableRing, finite_ring, integers, mod_n, parse_ring,
                           poly_over_field, prime_field, product_ring, square_zero_ring)


def radical_by_factoring(x, gens):
    """x in rad<gens> over Z: every prime of gcd(gens) divides x."""
    g = 0
    for a in gens:
        g = sympy.gcd(g, a)
    if g == 0:
        return x == 0
    return all(x % p == 0 for p in sympy.primefactors(g))


def test_integer_radical_examples():
    Z = integers()
    assert Z.radical_member(6, [12])
    assert not Z.radical_member(2, [12])
    assert Z.radical_member(0, [])
    assert not Z.radical_member(1, [])
    assert mod_n(4).radical_member(2, [])


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**6, 10**6), st.lists(st.integers(-10**4, 10**4), max_size=3))
def test_integer_radical_matches_factoring(x, gens):
    assert integers().radical_member(x, gens) == radical_by_factoring(x, gens)


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 12, 18, 30, 36])
def test_modular_shortcuts_match_exhaustion(n):
    A = mod_n(n)
    els = A.elements()
    for x in els:
        for gens in ([], [x], [2 % n], [3 % n, 4 % n]):
            for y in els[:12]:
                assert A.radical_member(y, gens) == A.ex_radical_member(y, gens)
                assert A.unit_mod(y, gens) == A.ex_unit_mod(y, gens)
                assert A.jacobson_member(y, gens) == A.ex_jacobson_member(y, gens)


def test_ring_axioms_on_samples():
    rng = random.Random(3)
    for A in (integers(), mod_n(12), prime_field(7), poly_over_field(5), product_ring(mod_n(2), mod_n(3))):
        for _ in range(60):
            a, b, c = (A.sample(rng) for _ in range(3))
            assert A.eq(A.add(a, b), A.add(b, a))
            assert A.eq(A.mul(a, A.add(b, c)), A.add(A.mul(a, b), A.mul(a, c)))
            assert A.eq(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)))
            assert A.is_zero(A.add(a, A.neg(a)))
            assert A.radical_member(a, [a])
            assert A.unit_mod(A.one, [])


def _poly_radical_by_factoring(P, f, g):
    X = sympy.Symbol("X")
    to_expr = lambda a: sympy.Poly(list(a) or [0], X, modulus=P.p)
    if not g:
        return not f
    _, factors = to_expr(g).factor_list()
    return all(to_expr(f).rem(h).is_zero for h, _ in factors)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_polynomial_radical_matches_factoring(seed):
    rng = random.Random(seed)
    P = PolyRing(5)
    f = P.sample(rng, 4)
    g = P.mul(P.sample(rng, 2), P.pow(P.sample(rng, 1), rng.randint(1, 3)))
    assert P.radical_member(f, [g]) == _poly_radical_by_factoring(P, f, g)


def test_polynomial_basics():
    P = poly_over_field(prime_field(5))
    X = P.X
    assert P.format(P.parse("X^2+3X+1")) == "X^2+3X+1"
    assert P.radical_member(X, [P.mul(X, X)])
    assert not P.radical_member(P.one, [X])
    assert P.unit_mod(P.parse("X+1"), [X])
    with pytest.raises(RingError):
        P.parse("X +* 1")


def test_bad_rings(tmp_path):
    with pytest.raises(RingError):
        prime_field(6)
    with pytest.raises(RingError):
        mod_n(0)
    with pytest.raises(RingError):
        poly_over_field(mod_n(6))
    with pytest.raises(RingError):
        TableRing([[0, 1], [1, 0]], [[0, 0], [0, 0]])  # no multiplicative identity
    with pytest.raises(RingError):
        parse_ring("quaternions")
    with pytest.raises(RingError):
        parse_ring("zmod:abc")


def test_table_ring_roundtrip(tmp_path):
    A = product_ring(mod_n(2), mod_n(4))
    assert len(A.elements()) == 8
    path = tmp_path / "r.json"
    path.write_text(json.dumps(A.to_json()))
    B = parse_ring(f"table:{path}")
    assert B.key == A.key
    C = finite_ring(A.to_json())
    assert C.format(C.one) == "<1,1>"


def test_square_zero_ring_is_local():
    A = square_zero_ring(2, 2)
    assert len(A.elements()) == 8
    nil = A.nilradical()
    assert len(nil) == 4
    assert A.jacobson_zero() == nil


@pytest.mark.parametrize("n", [4, 12, 30])
def test_quotients_match(n):
    A = mod_n(n)
    for g in range(n):
        Q = A.quotient([g])
        T = A.table().quotient([g])
        assert len(Q.elements()) == len(T.elements())


def test_parse_ring_descriptors():
    assert parse_ring("int").name == integers().name
    assert len(parse_ring("zmod:6").elements()) == 6
    assert parse_ring("gf:7").is_trivial() is False
    assert not parse_ring("poly:gf:3").finite
    for a, b in product(range(6), repeat=2):
        assert parse_ring("zmod:6").mul(a, b) == a * b % 6
