"""Arithmetic in GF(q) for prime powers q = p^k.

Elements are coefficient tuples of length k with entries in [0, p),
ascending degree (constant term first).  The modulus for extension fields
is the lexicographically least monic irreducible polynomial of degree k,
found by brute-force trial division; no lookup tables, no dependencies.

The lexicographic order on coefficient tuples is the global tie-breaking
order used by every generator downstream.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

MAX_ORDER = 49

FieldElem = tuple  # length-k tuple of ints mod p


class NotPrimePower(ValueError):
    """Raised when the requested field order is not a prime power."""


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting the zero element."""


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NotPrimePower(f"field order must be >= 2, got {q}")
    p = None
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    k = 0
    r = q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, k


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num by monic den, coefficients mod p, ascending degree."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        for j in range(dd + 1):
            num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            div = list(coeffs) + [1]
            rem = _poly_mod(list(poly), div, p)
            if rem == [0]:
                return False
    return True


class FiniteField:
    """GF(p^k) with tuple-of-coefficients elements.

    Immutable after construction; all operation tables are private caches.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.zero: FieldElem = (0,) * k
        self.one: FieldElem = (1,) + (0,) * (k - 1)
        # lexicographic element order: the global tie-break order
        self._elems = tuple(
            sorted(itertools.product(range(p), repeat=k))
        )
        self._index = {e: i for i, e in enumerate(self._elems)}

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def elements(self) -> tuple[FieldElem, ...]:
        return self._elems

    def nonzero(self) -> Iterator[FieldElem]:
        return (e for e in self._elems if e != self.zero)

    def idx(self, a: FieldElem) -> int:
        """Position of an element in the lexicographic order."""
        return self._index[a]

    def elem(self, i: int) -> FieldElem:
        """Element at position i of the lexicographic order."""
        return self._elems[i]

    def scalar(self, n: int) -> FieldElem:
        """Image of the integer n under the prime-field embedding."""
        return (n % self.p,) + (0,) * (self.k - 1)

    def _check(self, a: FieldElem) -> None:
        if a not in self._index:
            raise ValueError(f"{a!r} is not an element of {self}")

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a)
        self._check(b)
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: FieldElem) -> FieldElem:
        self._check(a)
        return tuple((-x) % self.p for x in a)

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        self._check(a)
        self._check(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, self.modulus, self.p)
        rem += [0] * (self.k - len(rem))
        return tuple(rem)

    def inv(self, a: FieldElem) -> FieldElem:
        self._check(a)
        if a == self.zero:
            raise DivisionByZero("inverse of 0")
        # a^(q-2) via square-and-multiply; the unit group has order q-1
        result = self.one
        base = a
        e = self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.mul(a, self.inv(b))


def field_new(q: int) -> FiniteField:
    """Return GF(q) with the deterministically chosen modulus.

    Raises NotPrimePower if q has two or more distinct prime factors and
    ValueError for q above the supported cap.
    """
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds supported cap {MAX_ORDER}")
    p, k = _factor_prime_power(q)
    if k == 1:
        modulus = (0, 1)  # the polynomial x
    else:
        modulus = None
        for coeffs in itertools.product(range(p), repeat=k):
            cand = coeffs + (1,)
            if _is_irreducible(cand, p):
                modulus = cand
                break
        assert modulus is not None  # irreducibles of every degree exist
    return FiniteField(p, k, modulus)


def arith(field: FiniteField, op: str, a: FieldElem, b: FieldElem | None = None) -> FieldElem:
    """Dispatch a named field operation; `b` is required for add and mul."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise ValueError(f"unknown field operation {op!r}")
