"""Matrix models of the Jordan-block modules ``L_a``.

``L_a`` is the span of the functions ``phi_r(n g) = (-1)^r binom(n, r)`` for
``r < a`` on the Tate module.  Every matrix uses one convention: columns index
source basis vectors, rows index target basis vectors, and a tensor product
basis ``e_i (x) f_j`` is ordered as in :func:`unipotent.matrices.kron`.

Each constructor has a closed form and an evaluation-oracle twin
(``*_oracle``) that samples the defining functions at ``n = 0 .. a-1`` and
solves for coordinates.  Tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from . import matrices as mx
from .binomial import delta_eval, delta_product, int_binom, rescale_coeffs_basis, tpoly_eval
from .coeffs import (
    QQ,
    CoeffField,
    NotAUnitError,
    PrimeField,
    PrimeFieldElem,
    Rationals,
    ResidueElem,
    invert_unit,
)
from .matrices import Matrix


class CharacteristicError(ValueError):
    """Operation only makes sense over a field of characteristic 0."""


@dataclass(frozen=True)
class JordanModule:
    a: int
    field: CoeffField = QQ
    twist: int = 0  # the module is L_a(twist); Galois picks up t**(-twist)

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"dimension must be >= 1, got {self.a}")
        if not isinstance(self.twist, int):
            raise TypeError("twist must be an integer")

    @property
    def basis(self) -> list[str]:
        return [f"phi_{r}" for r in range(self.a)]

    def monodromy(self, n) -> Matrix:
        return monodromy_matrix(self.a, n, self.field)

    def galois(self, t) -> Matrix:
        return galois_matrix(self.a, t, self.field, twist=self.twist)


@dataclass(frozen=True)
class ModuleMap:
    source: tuple  # tuple of JordanModule tensor factors
    target: JordanModule
    matrix: list = dc_field(compare=True)

    def __post_init__(self):
        rows, cols = mx.shape(self.matrix)
        expected = 1
        for m in self.source:
            expected *= m.a
        if rows != self.target.a or (rows and cols != expected):
            raise ValueError(
                f"matrix shape {rows}x{cols} does not match {expected} -> {self.target.a}"
            )

    @property
    def field(self) -> CoeffField:
        return self.target.field

    def source_monodromy(self, n) -> Matrix:
        return mx.kron_all([m.monodromy(n) for m in self.source], self.field.one)

    def source_galois(self, t) -> Matrix:
        return mx.kron_all([m.galois(t) for m in self.source], self.field.one)

    def is_monodromy_equivariant(self, n) -> bool:
        lhs = mx.matmul(self.matrix, self.source_monodromy(n))
        rhs = mx.matmul(self.target.monodromy(n), self.matrix)
        return mx.equal(lhs, rhs)

    def is_galois_equivariant(self, t) -> bool:
        lhs = mx.matmul(self.matrix, self.source_galois(t))
        rhs = mx.matmul(self.target.galois(t), self.matrix)
        return mx.equal(lhs, rhs)


# -- helpers -----------------------------------------------------------------


def _F(field: CoeffField, m: Matrix) -> Matrix:
    return mx.convert(m, field)


def phi_value(r: int, n: int) -> int:
    """``phi_r(n g)`` as an integer."""
    return (-1) ** r * int_binom(n, r)


def evaluation_matrix(a: int, field: CoeffField = QQ) -> Matrix:
    """``E[m][r] = phi_r(m g)`` for ``m, r < a``; lower unitriangular up to sign."""
    return _F(field, [[phi_value(r, m) for r in range(a)] for m in range(a)])


@lru_cache(maxsize=None)
def _evaluation_inverse(a: int, field: CoeffField) -> tuple:
    return tuple(tuple(row) for row in mx.inverse(evaluation_matrix(a, field)))


def phi_coordinates(values: Sequence, field: CoeffField = QQ) -> list:
    """Coordinates in ``phi_0 .. phi_{a-1}`` of the function with the given samples.

    ``values[m]`` is the value at ``m g``.  Exact for any function in ``L_a``.
    """
    inv = [list(r) for r in _evaluation_inverse(len(values), field)]
    return [field(x) for x in mx.matvec(inv, [field(v) for v in values])]


def _n_as_int(n, field: CoeffField) -> int:
    if isinstance(n, ResidueElem):
        if isinstance(field, Rationals):
            raise TypeError("residue monodromy parameters need an F_l coefficient field")
        if n.prime != field.characteristic:
            raise ValueError("residue prime differs from the field characteristic")
        return n.residue
    return int(n)


# -- monodromy ---------------------------------------------------------------


def monodromy_matrix(a: int, n, field: CoeffField = QQ) -> Matrix:
    """Action of ``n g`` on ``L_a`` in the ``phi`` basis.

    ``(n g) . phi_r`` is ``m g -> phi_r((m - n) g)``; Vandermonde gives the
    entry ``(j, r) = (-1)^(j+r) binom(-n, r-j)``.  Always unipotent upper
    triangular.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    n = _n_as_int(n, field)
    m = [[(-1) ** (j + r) * int_binom(-n, r - j) if j <= r else 0 for r in range(a)] for j in range(a)]
    return _F(field, m)


def monodromy_matrix_oracle(a: int, n: int, field: CoeffField = QQ) -> Matrix:
    cols = [phi_coordinates([phi_value(r, m - n) for m in range(a)], field) for r in range(a)]
    return mx.from_columns(cols)


def monodromy_matrix_power(a: int, n: int, field: CoeffField = QQ) -> Matrix:
    """``(-g)`` matrix raised to ``-n``; third route to the same matrix."""
    minus_g = _F(field, [[1 if i == j else (-1 if j == i + 1 else 0) for j in range(a)] for i in range(a)])
    return _F(field, mx.matpow(minus_g, -n, field.one, field.zero))


# -- Galois ------------------------------------------------------------------


def precision_exponent(prime: int, r_bound: int) -> int:
    """Smallest ``k`` with ``r_bound < prime**k``."""
    k = 1
    while prime**k <= r_bound:
        k += 1
    return k


@lru_cache(maxsize=None)
def _rescale_int(r: int, m: int) -> tuple:
    from .binomial import rescale_coeffs_recursive

    return tuple(rescale_coeffs_recursive(r, m))


def _galois_lift(a: int, t, field: PrimeField) -> int:
    """Non-negative integer lift of ``t`` good enough to evaluate ``c_r^j`` mod l."""
    l = field.prime
    k = precision_exponent(l, a - 1)
    if isinstance(t, ResidueElem):
        if t.prime != l:
            raise ValueError(f"Galois parameter {t!r} is not an l-adic residue for l={l}")
        if t.exponent < k:
            raise ValueError(f"need t modulo {l}^{k} to act on L_{a}, got {t!r}")
        lift = t.residue
    elif isinstance(t, PrimeFieldElem):
        if k > 1:
            raise ValueError(f"t modulo {l} does not determine the action on L_{a}; pass t mod {l}^{k}")
        lift = t.residue
    elif isinstance(t, Fraction) and t.denominator != 1:
        # a rational l-adic unit: reduce it modulo l^k
        if t.denominator % l == 0:
            raise NotAUnitError(f"{t} is not an l-adic integer")
        lift = t.numerator * pow(t.denominator, -1, l**k)
    else:
        lift = int(t)
    if lift % l == 0:
        raise NotAUnitError(f"{t!r} is not a unit at l={l}")
    return lift % l**k


def galois_matrix(a: int, t, field: CoeffField = QQ, twist: int = 0) -> Matrix:
    """Action of a Galois element with ``t = chi(gamma)^{-1}`` on ``L_a(twist)``.

    Entry ``(j, r) = (-1)^(j+r) c_r^j(t)``, scaled by ``t**(-twist)``.  Over
    F_l the value ``c_r^j(t)`` is the reduction of the integer ``c_r^j(lift)``
    for a non-negative lift of ``t`` modulo ``l**k`` with ``a - 1 < l**k``.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if isinstance(field, Rationals):
        t = Fraction(t)
        if t == 0:
            raise NotAUnitError("t must be invertible")
        rows = [[Fraction(0)] * a for _ in range(a)]
        for r in range(a):
            row = rescale_coeffs_basis(r)
            for j in range(r + 1):
                rows[j][r] = (-1) ** (j + r) * tpoly_eval(row[j], t)
        scalar = t ** (-twist)
    else:
        lift = _galois_lift(a, t, field)
        rows = [[0] * a for _ in range(a)]
        for r in range(a):
            cs = _rescale_int(r, lift)
            for j in range(r + 1):
                rows[j][r] = (-1) ** (j + r) * cs[j]
        scalar = field(lift) ** (-twist)
    return _F(field, mx.scale(scalar, rows))


def galois_matrix_oracle(a: int, t, field: CoeffField = QQ, twist: int = 0) -> Matrix:
    """Column ``r`` = coordinates of ``m g -> phi_r(t m g)`` sampled at ``m < a``."""
    if isinstance(field, Rationals):
        t = Fraction(t)
        samples = lambda r: [(-1) ** r * delta_eval(r, t * m) for m in range(a)]
        scalar = t ** (-twist)
    else:
        lift = _galois_lift(a, t, field)
        samples = lambda r: [phi_value(r, lift * m) for m in range(a)]
        scalar = field(lift) ** (-twist)
    cols = [phi_coordinates(samples(r), field) for r in range(a)]
    return _F(field, mx.scale(scalar, mx.from_columns(cols)))


def change_of_generator_matrix(a: int, u, field: CoeffField = QQ) -> Matrix:
    """Base change expressing the ``phi^{g'}`` functions in the ``phi^{g}`` basis.

    Column ``r`` holds ``(-1)^(j+r) c_r^j(u)``; the diagonal is ``u^r``.  The
    matrix sends ``phi_r^{g'}`` to its ``g``-coordinates where ``g = u g'``,
    which is exactly how the rescaling identity reads
    ``phi_r^{g'}(m g) = (-1)^r delta_r(u m)``.
    """
    if isinstance(field, Rationals):
        if Fraction(u) == 0:
            raise NotAUnitError("u must be invertible")
    return galois_matrix(a, u, field)


def change_of_generator_oracle(a: int, u: int, field: CoeffField = QQ) -> Matrix:
    """Sample ``phi_r^{g'}(m g)`` with ``m g = (u m) g'`` and solve."""
    if isinstance(field, Rationals):
        cols = [phi_coordinates([(-1) ** r * delta_eval(r, Fraction(u) * m) for m in range(a)], field) for r in range(a)]
    else:
        lift = _galois_lift(a, u, field)
        cols = [phi_coordinates([phi_value(r, lift * m) for m in range(a)], field) for r in range(a)]
    return mx.from_columns(cols)


# -- exact sequences and products --------------------------------------------


def ses_inclusion(a: int, field: CoeffField = QQ) -> ModuleMap:
    """``L_{a-1} -> L_a``, the inclusion of the first ``a - 1`` basis functions."""
    if a < 2:
        raise ValueError("the inclusion L_{a-1} -> L_a needs a >= 2")
    m = [[1 if i == j else 0 for j in range(a - 1)] for i in range(a)]
    return ModuleMap((JordanModule(a - 1, field),), JordanModule(a, field), _F(field, m))


def inclusion(a: int, b: int, field: CoeffField = QQ) -> ModuleMap:
    """Composite of successive inclusions ``L_a -> L_b`` for ``a <= b``."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    m = [[1 if i == j else 0 for j in range(a)] for i in range(b)]
    return ModuleMap((JordanModule(a, field),), JordanModule(b, field), _F(field, m))


def top_quotient(a: int, field: CoeffField = QQ) -> ModuleMap:
    """Surjection ``L_a -> k(-a+1)`` reading off the ``phi_{a-1}`` coordinate."""
    m = [[1 if j == a - 1 else 0 for j in range(a)]]
    return ModuleMap((JordanModule(a, field),), JordanModule(1, field, twist=-(a - 1)), _F(field, m))


def leading_quotient(a: int, field: CoeffField = QQ) -> ModuleMap:
    """``L_a -> k(-a+1)`` sending ``f`` to the coefficient of ``n^(a-1)`` in ``f(n g)``.

    This is ``top_quotient`` rescaled by ``(-1)^(a-1) / (a-1)!``, the
    normalisation under which products of functions multiply leading
    coefficients exactly.  It needs ``(a-1)!`` to be invertible.
    """
    _require_char0(field)
    m = [[Fraction((-1) ** (a - 1), factorial(a - 1)) if j == a - 1 else 0 for j in range(a)]]
    return ModuleMap((JordanModule(a, field),), JordanModule(1, field, twist=-(a - 1)), _F(field, m))


def mult_map(a: int, b: int, field: CoeffField = QQ) -> ModuleMap:
    """Pointwise multiplication ``L_a (x) L_b -> L_{a+b-1}``.

    ``phi_r phi_s = sum_i (-1)^i (r+s-i)! / ((r-i)! (s-i)! i!) phi_{r+s-i}``.
    """
    if a < 1 or b < 1:
        raise ValueError("dimensions must be >= 1")
    n = a + b - 1
    m = [[0] * (a * b) for _ in range(n)]
    for r in range(a):
        for s in range(b):
            for k, c in enumerate(delta_product(r, s).coeffs):
                if c:
                    i = r + s - k
                    m[k][r * b + s] = (-1) ** i * int(c)
    return ModuleMap((JordanModule(a, field), JordanModule(b, field)), JordanModule(n, field), _F(field, m))


def mult_map_oracle(a: int, b: int, field: CoeffField = QQ) -> Matrix:
    n = a + b - 1
    cols = []
    for r in range(a):
        for s in range(b):
            cols.append(phi_coordinates([phi_value(r, m) * phi_value(s, m) for m in range(n)], field))
    return mx.from_columns(cols)


def iterated_mult(dims: Sequence[int], field: CoeffField = QQ, nesting: str = "left") -> ModuleMap:
    """``L_{a_1} (x) ... (x) L_{a_k} -> L_{sum a_i - k + 1}``.

    ``nesting`` picks the bracketing; pointwise multiplication is associative
    so both give the same matrix.
    """
    dims = list(dims)
    if not dims:
        raise ValueError("need at least one factor")
    one = field.one
    if len(dims) == 1:
        a = dims[0]
        return ModuleMap((JordanModule(a, field),), JordanModule(a, field), _F(field, mx.identity(a)))
    if nesting == "left":
        acc = iterated_mult(dims[:-1], field, nesting)
        last = dims[-1]
        step = mult_map(acc.target.a, last, field)
        m = mx.matmul(step.matrix, mx.kron(acc.matrix, mx.identity(last, one, field.zero)))
    elif nesting == "right":
        acc = iterated_mult(dims[1:], field, nesting)
        first = dims[0]
        step = mult_map(first, acc.target.a, field)
        m = mx.matmul(step.matrix, mx.kron(mx.identity(first, one, field.zero), acc.matrix))
    else:
        raise ValueError(f"unknown nesting {nesting!r}")
    target = JordanModule(sum(dims) - len(dims) + 1, field)
    return ModuleMap(tuple(JordanModule(a, field) for a in dims), target, _F(field, m))


# -- characteristic zero: the nu basis -----------------------------------------


def _require_char0(field: CoeffField):
    if field.characteristic != 0:
        raise CharacteristicError("the nu basis divides by r! and needs characteristic 0")


def nu_basis_change(a: int, field: CoeffField = QQ) -> Matrix:
    """Column ``r`` holds the ``phi``-coordinates of ``nu_r(n g) = n^r / r!``."""
    _require_char0(field)
    cols = [phi_coordinates([Fraction(m**r, factorial(r)) for m in range(a)], field) for r in range(a)]
    return mx.from_columns(cols)


def nu_monodromy(a: int, n: int) -> Matrix:
    """Matrix of ``n g`` in the ``nu`` basis."""
    change = nu_basis_change(a)
    return mx.matmul(mx.inverse(change), mx.matmul(monodromy_matrix(a, n), change))


def shift_exponential(a: int, n: int) -> Matrix:
    """``exp(-n S)`` with ``S`` the nilpotent shift ``nu_r -> nu_{r-1}``."""
    s = [[Fraction(1) if j == i + 1 else Fraction(0) for j in range(a)] for i in range(a)]
    out = mx.identity(a, Fraction(1), Fraction(0))
    power = mx.identity(a, Fraction(1), Fraction(0))
    for k in range(1, a):
        power = mx.matmul(power, s)
        out = mx.add(out, mx.scale(Fraction((-n) ** k, factorial(k)), power))
    return _F(QQ, out)


def exp_structure_check(a: int, n: int, field: CoeffField = QQ) -> bool:
    _require_char0(field)
    return mx.equal(nu_monodromy(a, n), shift_exponential(a, n))


def partial_quotient_map(a: int, b: int, field: CoeffField = QQ) -> ModuleMap:
    """``a``-fold differentiation ``L_b -> L_{b-a}(-a)``, returned in the ``phi`` bases.

    In the ``nu`` basis it is ``nu_r -> nu_{r-a}`` for ``r >= a`` and kills
    ``nu_0 .. nu_{a-1}``.
    """
    _require_char0(field)
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    d_nu = [[Fraction(1) if r == i + a else Fraction(0) for r in range(b)] for i in range(b - a)]
    m = mx.matmul(nu_basis_change(b - a), mx.matmul(d_nu, mx.inverse(nu_basis_change(b))))
    return ModuleMap((JordanModule(b, field),), JordanModule(b - a, field, twist=-a), _F(field, m))


# -- non-semisimplicity ----------------------------------------------------------

WITNESS_MATRIX = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]


def nonsemisimple_witness(p: int) -> Matrix:
    """Frobenius at ``p = 3 mod 4`` acting on ``L_3`` over F_2.

    ``t = p^{-1}`` is taken modulo 4, the precision needed for ``c_2^1``.  The
    result is checked to be the non-diagonalisable involution
    ``[[1,0,0],[0,1,1],[0,0,1]]``.
    """
    if p % 4 != 3:
        raise ValueError(f"p = {p} is not 3 mod 4; the witness needs p = 3 (mod 4)")
    f2 = PrimeField(2)
    t = invert_unit(p, 2, precision_exponent(2, 2))
    g = galois_matrix(3, t, f2)
    ident = mx.identity(3, f2.one, f2.zero)
    if not mx.equal(g, _F(f2, WITNESS_MATRIX)):
        raise AssertionError(f"unexpected Frobenius matrix {g}")
    if not is_nonsemisimple_involution(g):
        raise AssertionError("witness matrix is semisimple")
    assert not mx.equal(g, ident)
    return g


def is_nonsemisimple_involution(g: Matrix) -> bool:
    """``g^2 = 1`` but ``g != 1`` in characteristic 2: minimal polynomial ``(x-1)^2``."""
    n = len(g)
    sample = g[0][0]
    one, zero = sample**0, sample - sample
    ident = mx.identity(n, one, zero)
    return mx.equal(mx.matmul(g, g), ident) and not mx.equal(g, ident)
