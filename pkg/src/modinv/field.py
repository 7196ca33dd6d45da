"""Prime fields F_p.

Polynomials and matrices store coefficients as plain ints already reduced
mod p; :class:`FieldElement` is the checked, user-facing scalar type.
"""

from __future__ import annotations

import functools

MAX_MODULUS = 1 << 16


class ModulusMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p. Obtain instances through :func:`GF` so they are shared."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p > MAX_MODULUS or not is_prime(p):
            raise ValueError(f"modulus must be a prime <= {MAX_MODULUS}, got {p!r}")
        self.p = p

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def __iter__(self):
        return (FieldElement(v, self) for v in range(self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    @functools.cached_property
    def primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise AssertionError("unreachable")


@functools.cache
def GF(p: int) -> PrimeField:
    return PrimeField(p)


class FieldElement:
    """A residue mod p, always stored fully reduced."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    @property
    def p(self) -> int:
        return self.field.p

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value + b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value - b, self.field)

    def __rsub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(b - self.value, self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * self.field.inv(b), self.field)

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(pow(self.field.inv(self.value), -e, self.p), self.field)
        return FieldElement(pow(self.value, e, self.p), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def fp_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fp_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fp_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
