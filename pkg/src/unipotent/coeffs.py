"""Exact coefficient arithmetic: rationals, prime fields and truncated residue rings.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
and residues modulo ``l**N`` are small immutable value classes that support the
usual operators and coerce Python integers, so generic matrix code can be
written once with ``+``, ``-``, ``*`` and ``/``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd
from typing import Union

Rational = Fraction


class FieldMismatchError(TypeError):
    """Raised when operands live in different coefficient rings."""


class NotAUnitError(ValueError):
    """Raised when an element that must be invertible is not."""


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


@lru_cache(maxsize=None)
def _prime_cached(n: int) -> bool:
    return is_prime(n)


@dataclass(frozen=True)
class PrimeFieldElem:
    residue: int
    modulus: int

    def __post_init__(self):
        if not _prime_cached(self.modulus):
            raise ValueError(f"modulus must be a prime, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"cannot combine elements of F_{self.modulus} and F_{other.modulus}"
                )
            return other.residue
        if isinstance(other, bool):
            return int(other)
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction):
            if other.denominator % self.modulus == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.modulus}")
            return other.numerator * pow(other.denominator, -1, self.modulus) % self.modulus
        raise FieldMismatchError(f"cannot combine F_{self.modulus} element with {type(other).__name__}")

    def _new(self, r: int) -> "PrimeFieldElem":
        return PrimeFieldElem(r, self.modulus)

    def __add__(self, other):
        return self._new(self.residue + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.residue - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.residue)

    def __mul__(self, other):
        return self._new(self.residue * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pos__(self):
        return self

    def inverse(self) -> "PrimeFieldElem":
        if self.residue == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.modulus}")
        return self._new(pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        return self * self._new(self._coerce(other)).inverse()

    def __rtruediv__(self, other):
        return self._new(self._coerce(other)) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self._new(pow(self.residue, k, self.modulus))

    def __eq__(self, other):
        try:
            return self.residue == self._coerce(other)
        except (FieldMismatchError, ZeroDivisionError):
            return False

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} mod {self.modulus}"


@total_ordering
@dataclass(frozen=True)
class ResidueElem:
    """An element of ``Z / l**N``, standing in for an l-adic integer."""

    residue: int
    prime: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def _coerce(self, other) -> int:
        if isinstance(other, ResidueElem):
            if (other.prime, other.exponent) != (self.prime, self.exponent):
                raise FieldMismatchError(
                    f"cannot combine Z/{self.modulus} and Z/{other.modulus} elements"
                )
            return other.residue
        if isinstance(other, int):
            return other % self.modulus
        raise FieldMismatchError(f"cannot combine Z/{self.modulus} element with {type(other).__name__}")

    def _new(self, r: int) -> "ResidueElem":
        return ResidueElem(r, self.prime, self.exponent)

    def __add__(self, other):
        return self._new(self.residue + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.residue - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.residue)

    def __mul__(self, other):
        return self._new(self.residue * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self._new(pow(self.residue, k, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    def inverse(self) -> "ResidueElem":
        return invert_unit(self.residue, self.prime, self.exponent)

    def __eq__(self, other):
        try:
            return self.residue == self._coerce(other)
        except FieldMismatchError:
            return False

    def __lt__(self, other):
        return self.residue < self._coerce(other)

    def __hash__(self):
        return hash((self.residue, self.prime, self.exponent))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} mod {self.prime}^{self.exponent}"


def invert_unit(u: int, prime: int, exponent: int) -> ResidueElem:
    """Inverse of ``u`` in ``Z / prime**exponent``.

    >>> invert_unit(5, 3, 2)
    2 mod 3^2
    """
    modulus = prime**exponent
    if gcd(u, prime) != 1:
        raise NotAUnitError(f"{u} is not a unit modulo {prime}^{exponent}")
    return ResidueElem(pow(u, -1, modulus), prime, exponent)


FieldElem = Union[Fraction, PrimeFieldElem]


class CoeffField:
    """Common interface of the two supported coefficient fields."""

    characteristic: int

    def __call__(self, x) -> FieldElem:
        raise NotImplementedError

    @property
    def zero(self) -> FieldElem:
        return self(0)

    @property
    def one(self) -> FieldElem:
        return self(1)

    def contains(self, x) -> bool:
        raise NotImplementedError


class Rationals(CoeffField):
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, PrimeFieldElem):
            raise FieldMismatchError("cannot lift an F_l element to Q")
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(CoeffField):
    def __init__(self, prime: int):
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        self.characteristic = prime

    @property
    def prime(self) -> int:
        return self.characteristic

    def __call__(self, x) -> PrimeFieldElem:
        if isinstance(x, PrimeFieldElem):
            if x.modulus != self.prime:
                raise FieldMismatchError(f"{x!r} is not in F_{self.prime}")
            return x
        if isinstance(x, ResidueElem):
            if x.prime != self.prime:
                raise FieldMismatchError(f"{x!r} does not reduce into F_{self.prime}")
            return PrimeFieldElem(x.residue, self.prime)
        if isinstance(x, Fraction):
            if x.denominator % self.prime == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.prime}")
            return PrimeFieldElem(x.numerator * pow(x.denominator, -1, self.prime), self.prime)
        return PrimeFieldElem(int(x), self.prime)

    def contains(self, x) -> bool:
        return isinstance(x, PrimeFieldElem) and x.modulus == self.prime

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.prime == self.prime

    def __hash__(self):
        return hash(("F", self.prime))

    def __repr__(self):
        return f"GF({self.prime})"


QQ = Rationals()


def GF(prime: int) -> PrimeField:
    return PrimeField(prime)


def field_from_spec(spec) -> CoeffField:
    """``0``/``None``/``"Q"`` select the rationals; a prime selects F_l."""
    if spec in (None, 0, "0", "Q", "QQ"):
        return QQ
    return PrimeField(int(spec))


def _field_of(x):
    if isinstance(x, PrimeFieldElem):
        return ("F", x.modulus)
    if isinstance(x, ResidueElem):
        return ("Z/", x.prime, x.exponent)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return "Q"
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


_OPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "/": operator.truediv}


def field_arithmetic(x, y, op: str):
    """Apply ``op`` to two elements of the same coefficient ring.

    Integers are read as rationals here, so mixing an int with an F_l
    element is a mismatch; use the field to coerce explicitly.
    """
    if _field_of(x) != _field_of(y):
        raise FieldMismatchError(f"mixed operands {x!r} and {y!r}")
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "/" and isinstance(x, ResidueElem):
        return x * y.inverse()
    if _field_of(x) == "Q":
        x, y = Fraction(x), Fraction(y)
    return _OPS[op](x, y)


def format_exact(x) -> str:
    """Exact string form used by every JSON export: ``"p/q"`` or ``"r mod l"``."""
    if isinstance(x, PrimeFieldElem):
        return f"{x.residue} mod {x.modulus}"
    if isinstance(x, ResidueElem):
        return f"{x.residue} mod {x.modulus}"
    return str(Fraction(x))


def parse_exact(s: str):
    s = s.strip()
    if " mod " in s:
        r, m = s.split(" mod ")
        m = int(m)
        if is_prime(m):
            return PrimeFieldElem(int(r), m)
        for p in range(2, m + 1):
            if m % p == 0:
                k = 0
                q = m
                while q % p == 0:
                    q //= p
                    k += 1
                if q != 1:
                    raise ValueError(f"modulus {m} is not a prime power")
                return ResidueElem(int(r), p, k)
    return Fraction(s)
