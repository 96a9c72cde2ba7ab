"""Effective commutative rings with radical, unit and Jacobson membership tests.

Three families:

* ``IntegerRing(m)`` is Z/m (Z itself for m = 0),
* ``PolyRing(p, f)`` is GF(p)[X]/(f) (GF(p)[X] itself for f = 0),
* ``TableRing`` is a finite ring given by addition and multiplication tables.

The first two are quotients of a principal ideal domain, so every ideal is
generated by one gcd and the tests reduce to gcd arithmetic.  Finite rings
also get exhaustive versions of every test, used as independent oracles.
"""

from __future__ import annotations

import json
import random
from itertools import product
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import sympy
from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gf
from sympy.parsing.sympy_parser import implicit_multiplication, parse_expr, standard_transformations


class RingError(ValueError):
    pass


class Ring:
    """Common interface.  Elements are hashable normal forms."""

    name = "ring"
    finite = False

    zero: Hashable
    one: Hashable

    def normalize(self, a):
        return a

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return self.normalize(a) == self.normalize(b)

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def pow(self, a, n: int):
        out, base = self.one, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def prod(self, xs: Iterable):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def is_trivial(self) -> bool:
        return self.eq(self.one, self.zero)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def sample(self, rng: random.Random, bound: int | None = None):
        raise NotImplementedError

    # ideal tests, all over finitely generated ideals <gens>

    def radical_member(self, x, gens: Sequence) -> bool:
        raise NotImplementedError

    def ideal_member(self, x, gens: Sequence) -> bool:
        raise NotImplementedError

    def one_in_ideal(self, gens: Sequence) -> bool:
        return self.ideal_member(self.one, gens)

    def unit_mod(self, x, gens: Sequence) -> bool:
        raise NotImplementedError

    def jacobson_member(self, x, gens: Sequence) -> bool | None:
        """``1 + xy`` invertible modulo <gens> for every y; None when undecided."""
        return None

    def quotient(self, gens: Sequence) -> Ring:
        raise NotImplementedError

    @property
    def key(self) -> Hashable:
        return (type(self).__name__, self.name)

    def __repr__(self):
        return f"<{self.name}>"


class FiniteRing(Ring):
    """Exhaustive versions of the ideal tests, for rings that list their elements."""

    finite = True

    def elements(self) -> list:
        raise NotImplementedError

    def __len__(self):
        return len(self.elements())

    def ideal(self, gens: Sequence) -> frozenset:
        els = self.elements()
        cur = {self.zero}
        for g in gens:
            mult = {self.mul(r, g) for r in els}
            cur = {self.add(i, m) for i in cur for m in mult}
        return frozenset(cur)

    def powers(self, x) -> list:
        out, seen, p = [], set(), self.one
        while p not in seen:
            seen.add(p)
            out.append(p)
            p = self.mul(p, x)
        return out

    def ex_radical_member(self, x, gens) -> bool:
        I = self.ideal(gens)
        return any(p in I for p in self.powers(x))

    def ex_unit_mod(self, x, gens) -> bool:
        I = self.ideal(gens)
        return any(self.sub(self.mul(x, y), self.one) in I for y in self.elements())

    def ex_jacobson_member(self, x, gens) -> bool:
        I = self.ideal(gens)
        els = self.elements()
        units = {u for u in els if any(self.sub(self.mul(u, y), self.one) in I for y in els)}
        return all(self.add(self.one, self.mul(x, y)) in units for y in els)

    def nilradical(self) -> frozenset:
        return frozenset(x for x in self.elements()
                         if any(self.is_zero(p) for p in self.powers(x)))

    def jacobson_zero(self) -> frozenset:
        return frozenset(x for x in self.elements() if self.ex_jacobson_member(x, []))

    def colon(self, I: frozenset, gens: Sequence) -> frozenset:
        """``(I : <gens>)`` for an ideal given as a set."""
        return frozenset(x for x in self.elements() if all(self.mul(x, g) in I for g in gens))

    def table(self) -> TableRing:
        els = self.elements()
        idx = {e: k for k, e in enumerate(els)}
        add = [[idx[self.add(a, b)] for b in els] for a in els]
        mul = [[idx[self.mul(a, b)] for b in els] for a in els]
        return TableRing(add, mul, [self.format(e) for e in els], name=f"table({self.name})")

    def sample(self, rng: random.Random, bound: int | None = None):
        return rng.choice(self.elements())


class TableRing(FiniteRing):
    """Finite commutative ring on ``0..n-1`` given by operation tables."""

    def __init__(self, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
                 labels: Sequence[str] | None = None, name: str = "table", check: bool = True):
        n = len(add)
        if n == 0 or len(mul) != n or any(len(r) != n for r in add) or any(len(r) != n for r in mul):
            raise RingError("tables must be square and of equal size")
        self.n = n
        self.add_t = [list(map(int, r)) for r in add]
        self.mul_t = [list(map(int, r)) for r in mul]
        if any(not 0 <= v < n for r in self.add_t + self.mul_t for v in r):
            raise RingError("table entry out of range")
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise RingError("labels must be distinct, one per element")
        self.name = name
        zeros = [z for z in range(n) if all(self.add_t[z][a] == a for a in range(n))]
        ones = [u for u in range(n) if all(self.mul_t[u][a] == a for a in range(n))]
        if not zeros or not ones:
            raise RingError("missing additive or multiplicative identity")
        self.zero, self.one = zeros[0], ones[0]
        self._neg = []
        for a in range(n):
            inv = [b for b in range(n) if self.add_t[a][b] == self.zero]
            if not inv:
                raise RingError(f"element {self.labels[a]} has no additive inverse")
            self._neg.append(inv[0])
        if check:
            self._check_axioms()

    def _check_axioms(self):
        A, M, R = self.add_t, self.mul_t, range(self.n)
        for a, b in product(R, R):
            if A[a][b] != A[b][a] or M[a][b] != M[b][a]:
                raise RingError("operations must be commutative")
        for a, b, c in product(R, R, R):
            if A[A[a][b]][c] != A[a][A[b][c]]:
                raise RingError("addition is not associative")
            if M[M[a][b]][c] != M[a][M[b][c]]:
                raise RingError("multiplication is not associative")
            if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                raise RingError("multiplication does not distribute over addition")

    def elements(self) -> list:
        return list(range(self.n))

    def add(self, a, b):
        return self.add_t[a][b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def format(self, a) -> str:
        return self.labels[a]

    def parse(self, text: str):
        text = text.strip()
        if text in self.labels:
            return self.labels.index(text)
        raise RingError(f"unknown element {text!r}")

    radical_member = FiniteRing.ex_radical_member
    unit_mod = FiniteRing.ex_unit_mod
    jacobson_member = FiniteRing.ex_jacobson_member

    def ideal_member(self, x, gens) -> bool:
        return x in self.ideal(gens)

    def quotient(self, gens: Sequence) -> TableRing:
        I = self.ideal(gens)
        cosets: dict[frozenset, int] = {}
        rep = []
        of = {}
        for a in range(self.n):
            c = frozenset(self.add(a, i) for i in I)
            if c not in cosets:
                cosets[c] = len(rep)
                rep.append(a)
            of[a] = cosets[c]
        add = [[of[self.add(a, b)] for b in rep] for a in rep]
        mul = [[of[self.mul(a, b)] for b in rep] for a in rep]
        return TableRing(add, mul, [self.labels[a] for a in rep],
                         name=f"{self.name}/<{','.join(self.format(g) for g in gens)}>", check=False)

    @property
    def key(self) -> Hashable:
        return ("table", tuple(map(tuple, self.add_t)), tuple(map(tuple, self.mul_t)))

    def to_json(self) -> dict:
        return {"elements": self.labels, "add": self.add_t, "mul": self.mul_t}


class PrincipalQuotient(Ring):
    """R/(m) for a Euclidean domain R; subclasses provide the domain arithmetic."""

    modulus: Hashable

    # domain primitives
    def _gcd(self, a, b):
        raise NotImplementedError

    def _divexact(self, a, b):
        raise NotImplementedError

    def _divides(self, d, a) -> bool:
        raise NotImplementedError

    def _unit(self, a) -> bool:
        raise NotImplementedError

    def _radical(self, a):
        """Product of the distinct prime factors (up to a unit)."""
        raise NotImplementedError

    def _dzero(self, a) -> bool:
        return a == self._zero_lift

    _zero_lift: Hashable = 0

    @property
    def domain(self) -> bool:
        return self._dzero(self.modulus)

    def ideal_gen(self, gens: Sequence):
        """Generator of ``<gens>`` read in the domain (a divisor of the modulus)."""
        g = self.modulus
        for x in gens:
            g = self._gcd(g, x)
        return g

    def _in_radical(self, x, d) -> bool:
        if self._dzero(d):
            return self._dzero(self.normalize(x))
        g = d
        while True:
            c = self._gcd(g, x)
            if self._unit(c):
                break
            g = self._divexact(g, c)
        return self._unit(g)

    def radical_member(self, x, gens: Sequence) -> bool:
        return self._in_radical(x, self.ideal_gen(gens))

    def ideal_member(self, x, gens: Sequence) -> bool:
        d = self.ideal_gen(gens)
        if self._dzero(d):
            return self._dzero(self.normalize(x))
        return self._divides(d, x)

    def unit_mod(self, x, gens: Sequence) -> bool:
        d = self.ideal_gen(gens)
        if self._dzero(d):
            return self._unit(x)
        return self._unit(self._gcd(x, d))

    def jacobson_member(self, x, gens: Sequence) -> bool:
        # Z and GF(p)[X] are Jacobson rings with J(0) = 0; a nonzero ideal
        # has a finite quotient where the Jacobson radical is the nilradical
        d = self.ideal_gen(gens)
        if self._dzero(d):
            return self._dzero(self.normalize(x))
        return self._in_radical(x, d)

    def nil_gen(self):
        if self.domain:
            return self._zero_lift
        return self._radical(self.modulus)

    def jacobson_zero_gen(self):
        return self.nil_gen()

    def colon_gen(self, c, j):
        """Generator of ``(<c> : <j>)`` where c divides the modulus."""
        if self._dzero(c):
            return self.one if self._dzero(j) else self._zero_lift
        return self._divexact(c, self._gcd(c, j))

    def quotient(self, gens: Sequence) -> PrincipalQuotient:
        return self.with_modulus(self.ideal_gen(gens))

    def with_modulus(self, m) -> PrincipalQuotient:
        raise NotImplementedError

    def ideal_representatives(self) -> list:
        """One generator per ideal of a finite quotient: the divisors of the modulus."""
        raise NotImplementedError


class IntegerRing(PrincipalQuotient, FiniteRing):
    """Z/m, or Z for m = 0."""

    def __init__(self, m: int = 0):
        m = abs(int(m))
        self.modulus = m
        self.finite = m != 0
        self.name = "int" if m == 0 else f"zmod:{m}"
        self.zero = 0
        self.one = self.normalize(1)

    def normalize(self, a):
        a = int(a)
        return a % self.modulus if self.modulus else a

    def add(self, a, b):
        return self.normalize(a + b)

    def neg(self, a):
        return self.normalize(-a)

    def mul(self, a, b):
        return self.normalize(a * b)

    def elements(self) -> list:
        if not self.finite:
            raise RingError("Z is infinite")
        return list(range(self.modulus))

    def parse(self, text: str):
        return self.normalize(int(text))

    def sample(self, rng: random.Random, bound: int | None = None):
        bound = 10 if bound is None else bound
        if self.finite:
            return rng.randrange(self.modulus)
        return rng.randint(-bound, bound)

    def _gcd(self, a, b):
        import math
        return math.gcd(int(a), int(b))

    def _divexact(self, a, b):
        return int(a) // int(b)

    def _divides(self, d, a) -> bool:
        return int(a) % int(d) == 0

    def _unit(self, a) -> bool:
        return abs(int(a)) == 1

    def _radical(self, a):
        return int(sympy.prod(sympy.primefactors(int(a)))) if int(a) > 1 else 1

    def with_modulus(self, m) -> IntegerRing:
        return IntegerRing(m)

    def ideal_representatives(self) -> list:
        if not self.finite:
            raise RingError("Z has infinitely many ideals")
        return [self.normalize(d) for d in sympy.divisors(self.modulus)]

    def inverse_mod(self, x: int, v: int) -> int:
        return self.normalize(pow(int(x), -1, int(v)))

    def unit_inverse(self, x: int) -> int:
        return int(x)


def _strip(c: Iterable[int], p: int) -> tuple:
    c = [int(a) % p for a in c]
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    return tuple(c[k:])


class PolyRing(PrincipalQuotient, FiniteRing):
    """GF(p)[X]/(f), or GF(p)[X] for f = 0.  Elements are coefficient tuples, leading first."""

    def __init__(self, p: int, f: Sequence[int] = ()):
        p = int(p)
        if not sympy.isprime(p):
            raise RingError(f"{p} is not prime")
        self.p = p
        f = _strip(f, p)
        if f:
            f = self._monic(f)
        self.modulus = f
        self._zero_lift = ()
        self.finite = bool(f)
        self.name = f"poly:gf:{p}" if not f else f"poly:gf:{p}/({self._fmt(f)})"
        self.zero = ()
        self.one = self.normalize((1,))

    def _monic(self, a):
        if not a:
            return ()
        return tuple(int(c) for c in gf.gf_monic(list(a), self.p, ZZ)[1])

    def normalize(self, a):
        a = _strip(a, self.p)
        if self.modulus and len(a) >= len(self.modulus):
            a = _strip(gf.gf_rem(list(a), list(self.modulus), self.p, ZZ), self.p)
        return a

    def add(self, a, b):
        return self.normalize(gf.gf_add(list(a), list(b), self.p, ZZ))

    def neg(self, a):
        return self.normalize(gf.gf_neg(list(a), self.p, ZZ))

    def mul(self, a, b):
        return self.normalize(gf.gf_mul(list(a), list(b), self.p, ZZ))

    def elements(self) -> list:
        if not self.finite:
            raise RingError("GF(p)[X] is infinite")
        d = len(self.modulus) - 1
        return [_strip(c, self.p) for c in product(range(self.p), repeat=d)]

    def _fmt(self, a) -> str:
        if not a:
            return "0"
        d = len(a) - 1
        parts = []
        for k, c in enumerate(a):
            e = d - k
            if c == 0:
                continue
            mono = "" if e == 0 else "X" if e == 1 else f"X^{e}"
            coef = str(c) if (c != 1 or e == 0) else ""
            parts.append(coef + mono)
        return "+".join(parts)

    def format(self, a) -> str:
        return self._fmt(a)

    def parse(self, text: str):
        X = sympy.Symbol("X")
        try:
            expr = parse_expr(text.replace("^", "**"), local_dict={"X": X},
                              transformations=standard_transformations + (implicit_multiplication,))
            coeffs = sympy.Poly(expr, X).all_coeffs()
        except (SyntaxError, TypeError, sympy.SympifyError, sympy.PolynomialError) as e:
            raise RingError(f"cannot read polynomial {text!r}") from e
        return self.normalize(int(c) for c in coeffs)

    def element(self, coeffs: Sequence[int]):
        return self.normalize(coeffs)

    @property
    def X(self):
        return self.normalize((1, 0))

    def degree(self, a) -> int:
        return len(self.normalize(a)) - 1

    def sample(self, rng: random.Random, bound: int | None = None):
        bound = 4 if bound is None else bound
        if self.finite:
            return self.normalize(rng.randrange(self.p) for _ in range(len(self.modulus) - 1))
        d = rng.randint(0, bound)
        return self.normalize(rng.randrange(self.p) for _ in range(d + 1))

    def _gcd(self, a, b):
        return tuple(int(c) for c in gf.gf_gcd(list(a), list(b), self.p, ZZ))

    def _divexact(self, a, b):
        return _strip(gf.gf_quo(list(a), list(b), self.p, ZZ), self.p)

    def _divides(self, d, a) -> bool:
        return not _strip(gf.gf_rem(list(a), list(d), self.p, ZZ), self.p)

    def _unit(self, a) -> bool:
        return len(_strip(a, self.p)) == 1

    def _radical(self, a):
        return tuple(int(c) for c in gf.gf_sqf_part(list(a), self.p, ZZ))

    def with_modulus(self, m) -> PolyRing:
        return PolyRing(self.p, m)

    def ideal_representatives(self) -> list:
        if not self.finite:
            raise RingError("GF(p)[X] has infinitely many ideals")
        _, factors = gf.gf_factor(list(self.modulus), self.p, ZZ)
        divs = [[1]]
        for g, e in factors:
            divs = [gf.gf_mul(d, gf.gf_pow(g, k, self.p, ZZ), self.p, ZZ)
                    for d in divs for k in range(e + 1)]
        return [self.normalize(d) for d in divs]

    def unit_inverse(self, x):
        return (pow(int(_strip(x, self.p)[0]), -1, self.p),)

    def inverse_mod(self, x, v):
        s, _, h = gf.gf_gcdex(list(x), list(v), self.p, ZZ)
        if len(h) != 1:
            raise RingError("not invertible")
        return self.normalize(gf.gf_rem(s, list(v), self.p, ZZ))


# constructors

def integers() -> IntegerRing:
    return IntegerRing(0)


def mod_n(n: int) -> IntegerRing:
    if int(n) < 1:
        raise RingError("modulus must be at least 1")
    return IntegerRing(n)


def prime_field(p: int) -> IntegerRing:
    if not sympy.isprime(int(p)):
        raise RingError(f"{p} is not prime")
    return IntegerRing(p)


def poly_over_field(field: Ring | int) -> PolyRing:
    p = field if isinstance(field, int) else getattr(field, "modulus", None)
    if not isinstance(p, int) or not sympy.isprime(p):
        raise RingError("polynomials are supported over prime fields GF(p) only")
    return PolyRing(p)


def finite_ring(table) -> TableRing:
    """From a dict ``{"add": ..., "mul": ..., "elements": [...]}``, a JSON path, or a TableRing."""
    if isinstance(table, TableRing):
        return table
    if isinstance(table, (str, Path)):
        table = json.loads(Path(table).read_text())
    try:
        return TableRing(table["add"], table["mul"], table.get("elements"),
                         name=table.get("name", "table"))
    except (KeyError, TypeError) as e:
        raise RingError(f"invalid ring table: {e}") from e


def product_ring(A: FiniteRing, B: FiniteRing) -> TableRing:
    """The direct product A x B."""
    pairs = [(a, b) for a in A.elements() for b in B.elements()]
    idx = {p: k for k, p in enumerate(pairs)}
    add = [[idx[(A.add(a, c), B.add(b, d))] for c, d in pairs] for a, b in pairs]
    mul = [[idx[(A.mul(a, c), B.mul(b, d))] for c, d in pairs] for a, b in pairs]
    labels = [f"<{A.format(a)},{B.format(b)}>" for a, b in pairs]
    return TableRing(add, mul, labels, name=f"{A.name}x{B.name}")


def square_zero_ring(p: int, k: int) -> TableRing:
    """GF(p)[e1..ek] with all products e_i e_j = 0 (p^(k+1) elements, local)."""
    if not sympy.isprime(p):
        raise RingError(f"{p} is not prime")
    vecs = list(product(range(p), repeat=k + 1))
    idx = {v: n for n, v in enumerate(vecs)}

    def add(u, v):
        return tuple((a + b) % p for a, b in zip(u, v))

    def mul(u, v):
        return tuple([(u[0] * v[0]) % p] + [(u[0] * v[i] + v[0] * u[i]) % p for i in range(1, k + 1)])

    def fmt(v):
        parts = [str(v[0])] if v[0] else []
        parts += [f"{c if c != 1 else ''}e{i}" for i, c in enumerate(v[1:], 1) if c]
        return "+".join(parts) or "0"

    return TableRing([[idx[add(u, v)] for v in vecs] for u in vecs],
                     [[idx[mul(u, v)] for v in vecs] for u in vecs],
                     [fmt(v) for v in vecs], name=f"gf{p}[e1..e{k}]/(e)^2")


def parse_ring(desc: str) -> Ring:
    """``int``, ``zmod:<n>``, ``gf:<p>``, ``poly:gf:<p>`` or ``table:<file.json>``."""
    desc = desc.strip()
    try:
        if desc == "int":
            return integers()
        if desc.startswith("zmod:"):
            return mod_n(int(desc[5:]))
        if desc.startswith("gf:"):
            return prime_field(int(desc[3:]))
        if desc.startswith("poly:gf:"):
            return PolyRing(int(desc[8:]))
        if desc.startswith("table:"):
            return finite_ring(desc[6:])
    except (ValueError, OSError) as e:
        raise RingError(f"bad ring descriptor {desc!r}: {e}") from e
    raise RingError(f"bad ring descriptor {desc!r}")
