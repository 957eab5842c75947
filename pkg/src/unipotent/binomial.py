"""Integer-valued polynomial calculus in the binomial basis.

Polynomials in ``x`` are stored by their coordinates in the basis
``delta_r(x) = binom(x, r)``; polynomials in the auxiliary variable ``t`` are
plain monomial coefficient tuples (constant term first).

The rescaling coefficients ``c_r^j(t)`` are defined by

    delta_r(t x) = sum_{j <= r} c_r^j(t) delta_j(x)

and are computed two independent ways: by expanding and converting bases
(:func:`rescale_coeffs_basis`) and by the Vandermonde induction on integer
``t = m`` (:func:`rescale_coeffs_recursive`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .coeffs import PrimeFieldElem

TPoly = tuple  # monomial coefficients in t, constant first


@dataclass(frozen=True)
class BinomialPoly:
    """A rational polynomial written as ``sum_r coeffs[r] * delta_r``."""

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def delta(cls, r: int) -> "BinomialPoly":
        return cls((0,) * r + (1,))

    @classmethod
    def from_monomial(cls, coeffs: Sequence) -> "BinomialPoly":
        return cls(tuple(monomial_to_delta([Fraction(c) for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_monomial(self) -> list[Fraction]:
        out = [Fraction(0)] * max(len(self.coeffs), 1)
        for r, c in enumerate(self.coeffs):
            if c:
                for k, m in enumerate(delta_monomial(r)):
                    out[k] += c * m
        return out

    def __call__(self, n):
        return sum((c * delta_eval(r, n) for r, c in enumerate(self.coeffs)), Fraction(0))

    def __add__(self, other: "BinomialPoly") -> "BinomialPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (k - len(self.coeffs))
        b = other.coeffs + (0,) * (k - len(other.coeffs))
        return BinomialPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not isinstance(other, BinomialPoly):
            return BinomialPoly(tuple(c * other for c in self.coeffs))
        out: dict[int, Fraction] = {}
        for r, a in enumerate(self.coeffs):
            if not a:
                continue
            for s, b in enumerate(other.coeffs):
                if not b:
                    continue
                for k, c in enumerate(delta_product(r, s).coeffs):
                    if c:
                        out[k] = out.get(k, Fraction(0)) + a * b * c
        n = max(out, default=-1) + 1
        return BinomialPoly(tuple(out.get(k, 0) for k in range(n)))

    __rmul__ = __mul__

    def has_integer_coords(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        terms = [f"{c}*d{r}" for r, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def delta_monomial(r: int) -> tuple:
    """Monomial coefficients of ``binom(x, r)``."""
    poly = [Fraction(1)]
    for i in range(r):
        # multiply by (x - i)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= i * c
        poly = nxt
    f = factorial(r)
    return tuple(c / f for c in poly)


def int_binom(n: int, r: int) -> int:
    """``binom(n, r)`` for any integer ``n`` (negative upper index allowed)."""
    if r < 0:
        return 0
    if n >= 0:
        return comb(n, r)
    return (-1) ** r * comb(r - n - 1, r)


def delta_eval(r: int, n, *, rational_formula: bool = False):
    """Evaluate ``delta_r`` at ``n``.

    Integers and rationals go through exact rational arithmetic.  For an F_l
    element the integer binomial of a representative is reduced, which is
    only meaningful when ``r < l`` unless ``rational_formula`` is off and the
    caller passes an integer.  Asking for the rational formula in
    characteristic ``l`` with ``r >= l`` raises, since it divides by ``r!``.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return n**0 if isinstance(n, PrimeFieldElem) else 1
    if isinstance(n, PrimeFieldElem):
        if r >= n.modulus:
            raise ZeroDivisionError(
                f"delta_{r} needs division by {r}! which is 0 in F_{n.modulus}; "
                "evaluate the integer binomial of an integer lift instead"
            )
        num = n**0
        for i in range(r):
            num = num * (n - i)
        return num / factorial(r)
    if isinstance(n, int) and not rational_formula:
        return int_binom(n, r)
    n = Fraction(n)
    num = Fraction(1)
    for i in range(r):
        num *= n - i
    return num / factorial(r)


@lru_cache(maxsize=None)
def delta_product(r: int, s: int) -> BinomialPoly:
    """``delta_r * delta_s`` in the binomial basis (all coefficients positive integers)."""
    if r < 0 or s < 0:
        raise ValueError("indices must be >= 0")
    coeffs = [0] * (r + s + 1)
    for i in range(min(r, s) + 1):
        coeffs[r + s - i] = factorial(r + s - i) // (
            factorial(r - i) * factorial(s - i) * factorial(i)
        )
    return BinomialPoly(tuple(coeffs))


def monomial_to_delta(coeffs: Sequence) -> list:
    """Convert monomial coefficients to binomial-basis coordinates.

    Triangular solve from the top degree down.  Coefficients may be any ring
    elements closed under multiplication by rationals, including the
    ``t``-polynomials used by :func:`rescale_coeffs_basis`.
    """
    work = list(coeffs)
    n = len(work)
    out = [None] * n
    zero = _zero_like(work[0]) if work else Fraction(0)
    for k in range(n - 1, -1, -1):
        # delta_k has leading coefficient 1/k!
        ck = _scale(work[k], factorial(k))
        out[k] = ck
        for i, m in enumerate(delta_monomial(k)):
            if m:
                work[i] = _sub(work[i], _scale(ck, m))
    return [zero if x is None else x for x in out]


# -- polynomials in t --------------------------------------------------------


def _zero_like(x):
    return () if isinstance(x, tuple) else Fraction(0)


def _scale(x, c):
    if isinstance(x, tuple):
        return tpoly_trim(tuple(Fraction(c) * a for a in x))
    return x * c


def _sub(x, y):
    if isinstance(x, tuple):
        return tpoly_add(x, tuple(-a for a in y))
    return x - y


def tpoly_trim(p: Sequence) -> TPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def tpoly_add(p: TPoly, q: TPoly) -> TPoly:
    k = max(len(p), len(q))
    p = tuple(p) + (0,) * (k - len(p))
    q = tuple(q) + (0,) * (k - len(q))
    return tpoly_trim(Fraction(a) + Fraction(b) for a, b in zip(p, q))


def tpoly_mul(p: TPoly, q: TPoly) -> TPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tpoly_trim(out)


def tpoly_eval(p: TPoly, t):
    """Horner evaluation; ``t`` may be a rational or a field element."""
    acc = t * 0 if not isinstance(t, int) else Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def tpoly_str(p: TPoly) -> str:
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


# -- rescaling coefficients --------------------------------------------------


@lru_cache(maxsize=None)
def rescale_coeffs_basis(r: int) -> tuple:
    """Row ``(c_r^0(t), ..., c_r^r(t))`` of monomial ``t``-polynomials.

    ``delta_r(t x)`` expands to ``sum_k [coeff of x^k in delta_r] * t^k * x^k``;
    the ``x``-monomials are then rewritten in the binomial basis.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    in_x = [tpoly_trim((0,) * k + (m,)) for k, m in enumerate(delta_monomial(r))]
    return tuple(monomial_to_delta(in_x))


@lru_cache(maxsize=None)
def _recursive_table(r_max: int, m: int) -> tuple:
    """All ``c_g^h(m)`` for ``0 <= h <= g <= r_max`` as nested integer tuples."""
    if m == 0:
        return tuple(tuple(1 if g == 0 else 0 for h in range(g + 1)) for g in range(r_max + 1))
    prev = _recursive_table(r_max, m - 1)
    rows = []
    for r in range(r_max + 1):
        row = []
        for j in range(r + 1):
            total = 0
            for g in range(r + 1):
                for h in range(g + 1):
                    i = r - g + h - j
                    if i < 0 or i > min(h, r - g) or j + g - r < 0 or j - h < 0:
                        continue
                    c = prev[g][h]
                    if c:
                        num = factorial(j)
                        den = factorial(j + g - r) * factorial(j - h) * factorial(i)
                        total += c * (num // den)
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def rescale_coeffs_recursive(r: int, m: int) -> list[int]:
    """``[c_r^0(m), ..., c_r^r(m)]`` by induction on ``m`` via Vandermonde.

    Only integer arithmetic is used, which is what certifies integrality.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if m < 0:
        raise ValueError("the induction runs over m >= 0")
    return list(_recursive_table(r, m)[r])


def rescale_value(r: int, j: int, t):
    """``c_r^j(t)`` for a rational ``t`` via the basis-conversion polynomial."""
    return tpoly_eval(rescale_coeffs_basis(r)[j], Fraction(t))


def is_z_closed(p, sample_range: int) -> bool:
    """True iff ``p(n)`` is an integer for ``0 <= n <= sample_range``.

    ``p`` may be a :class:`BinomialPoly` or a monomial coefficient sequence.
    """
    if sample_range < 1:
        raise ValueError("sample_range must be >= 1")
    if isinstance(p, BinomialPoly):
        values = (p(n) for n in range(sample_range + 1))
    else:
        coeffs = tuple(Fraction(c) for c in p)
        values = (tpoly_eval(coeffs, Fraction(n)) for n in range(sample_range + 1))
    return all(Fraction(v).denominator == 1 for v in values)


def is_z_closed_exact(p) -> bool:
    """Exact test: integer coordinates in the binomial basis."""
    if not isinstance(p, BinomialPoly):
        p = BinomialPoly.from_monomial(p)
    return p.has_integer_coords()


@dataclass(frozen=True)
class RescaleTable:
    r_max: int
    entries: tuple  # entries[r][j] is a t-polynomial

    @classmethod
    def build(cls, r_max: int) -> "RescaleTable":
        if r_max < 0:
            raise ValueError("r_max must be >= 0")
        return cls(r_max, tuple(rescale_coeffs_basis(r) for r in range(r_max + 1)))

    def __call__(self, r: int, j: int, t):
        return tpoly_eval(self.entries[r][j], t)

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    def to_obj(self) -> list:
        # entries[r][j] -> list of monomial coefficient strings in t
        return [[[str(Fraction(c)) for c in poly] for poly in row] for row in self.entries]

    @classmethod
    def from_obj(cls, obj: list) -> "RescaleTable":
        entries = tuple(tuple(tpoly_trim(Fraction(c) for c in poly) for poly in row) for row in obj)
        return cls(len(entries) - 1, entries)
