from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unipotent import matrices as mx
from unipotent.coeffs import GF, QQ, NotAUnitError, ResidueElem, invert_unit
from unipotent.jordan import (
    WITNESS_MATRIX,
    CharacteristicError,
    JordanModule,
    ModuleMap,
    change_of_generator_matrix,
    change_of_generator_oracle,
    evaluation_matrix,
    exp_structure_check,
    galois_matrix,
    galois_matrix_oracle,
    inclusion,
    is_nonsemisimple_involution,
    iterated_mult,
    leading_quotient,
    monodromy_matrix,
    monodromy_matrix_oracle,
    monodromy_matrix_power,
    mult_map,
    mult_map_oracle,
    nonsemisimple_witness,
    nu_basis_change,
    nu_monodromy,
    partial_quotient_map,
    phi_coordinates,
    precision_exponent,
    ses_inclusion,
    shift_exponential,
    top_quotient,
)

FIELDS = [QQ, GF(2), GF(3), GF(5)]
F = lambda field, m: mx.convert(m, field)


def ident(a, field=QQ):
    return mx.identity(a, field.one, field.zero)


# -- monodromy -------------------------------------------------------------------


def test_monodromy_minus_one():
    assert monodromy_matrix(2, -1) == [[1, -1], [0, 1]]


def test_monodromy_zero_is_identity():
    assert monodromy_matrix(3, 0) == ident(3)


def test_monodromy_by_evaluation():
    # column r holds the coordinates of m -> (-1)^r binom(m - 2, r)
    m = monodromy_matrix(3, 2)
    for r in range(3):
        samples = [(-1) ** r * comb(k - 2, r) if k >= 2 else (-1) ** r * _binom_any(k - 2, r) for k in range(3)]
        assert mx.column(m, r) == phi_coordinates(samples)


def _binom_any(n, r):
    out = Fraction(1)
    for i in range(r):
        out *= Fraction(n - i, i + 1)
    return int(out)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_three_monodromy_routes_agree(field):
    for a in range(1, 6):
        for n in range(-4, 5):
            m = monodromy_matrix(a, n, field)
            assert m == F(field, monodromy_matrix_oracle(a, n, field))
            assert m == monodromy_matrix_power(a, n, field)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_unipotence(field):
    for a in range(1, 7):
        for n in range(-4, 5):
            nil = mx.sub(monodromy_matrix(a, n, field), ident(a, field))
            assert mx.is_zero(mx.matpow(nil, a, field.one, field.zero))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_group_law(field):
    for a in range(1, 7):
        for m in range(-4, 5):
            for n in range(-4, 5):
                prod = mx.matmul(monodromy_matrix(a, m, field), monodromy_matrix(a, n, field))
                assert F(field, prod) == monodromy_matrix(a, m + n, field)


@pytest.mark.parametrize("l, k", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_continuity_mod_prime_powers(l, k):
    field = GF(l)
    for a in range(1, l**k + 1):
        for n in range(2 * l**k + 1):
            assert monodromy_matrix(a, n, field) == monodromy_matrix(a, n + l**k, field)
        assert monodromy_matrix(a, ResidueElem(5, l, k), field) == monodromy_matrix(a, 5, field)


def test_residue_monodromy_needs_matching_field():
    with pytest.raises(TypeError):
        monodromy_matrix(2, ResidueElem(1, 2, 1), QQ)
    with pytest.raises(ValueError):
        monodromy_matrix(2, ResidueElem(1, 2, 1), GF(3))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_evaluation_matrix_invertible(field):
    for a in range(1, 8):
        assert mx.rank(evaluation_matrix(a, field)) == a


# -- Galois ----------------------------------------------------------------------------


def test_galois_examples():
    assert galois_matrix(3, 1) == ident(3)
    assert galois_matrix(2, Fraction(1, 2)) == [[1, 0], [0, Fraction(1, 2)]]
    assert galois_matrix(3, 3)[1][2] == -3  # -(t^2 - t)/2 at t = 3


def test_galois_rejects_non_units():
    with pytest.raises(NotAUnitError):
        galois_matrix(3, 0)
    with pytest.raises(NotAUnitError):
        galois_matrix(3, 4, GF(2))
    with pytest.raises(NotAUnitError):
        galois_matrix(2, Fraction(1, 3), GF(3))


def test_galois_residue_precision():
    # L_3 over F_2 needs t modulo 4
    assert precision_exponent(2, 2) == 2
    with pytest.raises(ValueError):
        galois_matrix(3, GF(2)(1), GF(2))
    assert galois_matrix(3, ResidueElem(3, 2, 2), GF(2)) == galois_matrix(3, 3, GF(2))


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_galois_closed_form_matches_sampling(field):
    ts = [Fraction(1, 3), Fraction(2), Fraction(-5, 7)] if field is QQ else [1, 7, 11, 13]
    for a in range(1, 6):
        for t in ts:
            if field.characteristic and t % field.characteristic == 0:
                continue
            assert galois_matrix(a, t, field) == F(field, galois_matrix_oracle(a, t, field))


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5)], ids=str)
def test_galois_multiplicative(field):
    ts = [Fraction(2), Fraction(1, 3), Fraction(7)] if field is QQ else [2, 7, 8]
    ts = [t for t in ts if not field.characteristic or t % field.characteristic]
    for a in range(1, 6):
        for t in ts:
            for s in ts:
                prod = mx.matmul(galois_matrix(a, t, field), galois_matrix(a, s, field))
                assert F(field, prod) == galois_matrix(a, t * s, field)


def test_galois_diagonal_and_twist():
    t = Fraction(2, 5)
    g = galois_matrix(4, t)
    assert [g[r][r] for r in range(4)] == [t**r for r in range(4)]
    assert JordanModule(1, twist=-3).galois(t) == [[t**3]]
    assert galois_matrix(2, t, twist=1) == mx.scale(1 / t, g[:2] and galois_matrix(2, t))


@pytest.mark.parametrize("u", [1, 2, 3, 5])
def test_semidirect_relation(u):
    t = Fraction(1, u)
    for a in range(1, 6):
        g = galois_matrix(a, t)
        for m in range(-2, 3):
            lhs = mx.matmul(mx.matmul(g, monodromy_matrix(a, m)), mx.inverse(g))
            assert lhs == monodromy_matrix(a, u * m)


# -- change of generator -----------------------------------------------------------------


def test_change_of_generator_examples():
    assert change_of_generator_matrix(4, 1) == ident(4)
    c = change_of_generator_matrix(3, 3)
    assert [c[i][i] for i in range(3)] == [1, 3, 9]
    assert c[1][2] == -3
    assert mx.rank(c) == 3


@pytest.mark.parametrize("field", [QQ, GF(7)], ids=str)
def test_change_of_generator_composes(field):
    for a in range(1, 5):
        for u in (2, 3, 5):
            assert change_of_generator_matrix(a, u, field) == F(field, change_of_generator_oracle(a, u, field))
            for v in (2, 3, 5):
                prod = mx.matmul(change_of_generator_matrix(a, u, field), change_of_generator_matrix(a, v, field))
                assert F(field, prod) == change_of_generator_matrix(a, u * v, field)


def test_change_of_generator_needs_unit():
    with pytest.raises(NotAUnitError):
        change_of_generator_matrix(3, 0)


# -- exact sequences ------------------------------------------------------------------------


def test_ses_inclusion_shape():
    assert ses_inclusion(2).matrix == [[1], [0]]
    with pytest.raises(ValueError):
        ses_inclusion(1)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_ses_equivariance_and_quotient_scalar(field):
    ts = [Fraction(2), Fraction(1, 3)] if field is QQ else [1, 5, 7]
    ts = [t for t in ts if not field.characteristic or Fraction(t).numerator % field.characteristic]
    for a in range(2, 6):
        inc = ses_inclusion(a, field)
        for n in range(-3, 4):
            assert inc.is_monodromy_equivariant(n)
        for t in ts:
            assert inc.is_galois_equivariant(t)
            assert galois_matrix(a, t, field)[a - 1][a - 1] == field(t) ** (a - 1)
            # the top quotient lands in the twist k(-a+1)
            assert top_quotient(a, field).is_galois_equivariant(t)


def test_inclusions_compose():
    for a in range(1, 7):
        for b in range(a, 7):
            for m in range(a, b + 1):
                assert mx.matmul(inclusion(m, b).matrix, inclusion(a, m).matrix) == inclusion(a, b).matrix


# -- multiplication ---------------------------------------------------------------------------


def test_mult_unit_factor_is_identity():
    for k in range(1, 6):
        assert mult_map(1, k).matrix == ident(k)


def test_mult_phi1_phi1():
    col = mx.column(mult_map(2, 2).matrix, 1 * 2 + 1)
    assert col == [0, -1, 2]
    assert col == mx.column(mult_map_oracle(2, 2), 3)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_mult_rank_and_oracle(field):
    for a in range(1, 7):
        for b in range(1, 7):
            m = mult_map(a, b, field).matrix
            assert mx.rank(m) >= max(a, b)
            if a <= 4 and b <= 4:
                assert m == F(field, mult_map_oracle(a, b, field))


@pytest.mark.parametrize("field", [QQ, GF(3)], ids=str)
def test_mult_equivariance(field):
    ts = [Fraction(2), Fraction(1, 3)] if field is QQ else [2, 5]
    for a in range(1, 5):
        for b in range(1, 5):
            mm = mult_map(a, b, field)
            assert all(mm.is_monodromy_equivariant(n) for n in (-2, 1, 3))
            assert all(mm.is_galois_equivariant(t) for t in ts)


def test_iterated_mult_bracketing():
    left = iterated_mult([2, 2, 2], nesting="left")
    right = iterated_mult([2, 2, 2], nesting="right")
    assert left.target.a == 4
    assert left.matrix == right.matrix
    assert iterated_mult([3]).matrix == ident(3)
    assert iterated_mult([1, 1, 1, 1]).matrix == [[1]]
    with pytest.raises(ValueError):
        iterated_mult([])


def test_top_row_of_mult_is_a_binomial_multiple():
    # phi_{a-1} phi_{b-1} has top coefficient binom(a+b-2, a-1)
    for a in range(1, 5):
        for b in range(1, 5):
            lhs = mx.matmul(top_quotient(a + b - 1).matrix, mult_map(a, b).matrix)
            rhs = mx.kron(top_quotient(a).matrix, top_quotient(b).matrix)
            assert lhs == mx.scale(comb(a + b - 2, a - 1), rhs)
            lead = mx.matmul(leading_quotient(a + b - 1).matrix, mult_map(a, b).matrix)
            assert lead == mx.kron(leading_quotient(a).matrix, leading_quotient(b).matrix)


def test_top_quotient_square_fails_in_characteristic_two():
    # phi_1 phi_1 = phi_1 over F_2, so the product never reaches the top of L_3
    f2 = GF(2)
    lhs = mx.matmul(top_quotient(3, f2).matrix, mult_map(2, 2, f2).matrix)
    assert mx.is_zero(lhs)
    assert not mx.is_zero(mx.kron(top_quotient(2, f2).matrix, top_quotient(2, f2).matrix))


def test_module_map_shape_check():
    with pytest.raises(ValueError):
        ModuleMap((JordanModule(2),), JordanModule(2), [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValueError):
        JordanModule(0)


# -- characteristic zero ------------------------------------------------------------------------


def test_nu_basis_examples():
    assert nu_basis_change(1) == [[1]]
    assert nu_basis_change(2) == [[1, 0], [0, -1]]
    for a in range(1, 7):
        c = nu_basis_change(a)
        assert mx.matmul(c, mx.inverse(c)) == ident(a)


def test_nu_basis_needs_characteristic_zero():
    with pytest.raises(CharacteristicError):
        nu_basis_change(3, GF(5))
    with pytest.raises(CharacteristicError):
        partial_quotient_map(1, 2, GF(3))


def test_exp_structure():
    assert exp_structure_check(3, 1)
    assert exp_structure_check(4, -2)
    for a in range(1, 6):
        assert exp_structure_check(a, 0)
        for n in range(-3, 4):
            assert exp_structure_check(a, n)
    # (g . nu_r)(m g) = (m - 1)^r / r!: column r of the n = 1 matrix
    m = nu_monodromy(3, 1)
    assert [row[2] for row in m] == [Fraction(1, 2), -1, 1]
    assert shift_exponential(3, 0) == ident(3)


def test_differentiation_examples():
    d = partial_quotient_map(1, 2)
    # nu_1 -> nu_0, nu_0 -> 0, written in phi bases: phi_1 = -nu_1
    assert d.matrix == [[0, -1]]
    assert d.target.twist == -1
    with pytest.raises(ValueError):
        partial_quotient_map(2, 2)


@pytest.mark.parametrize("b", range(2, 6))
def test_differentiation_kernel_and_twist(b):
    for a in range(1, b):
        d = partial_quotient_map(a, b)
        kernel = mx.kernel(d.matrix)
        assert len(kernel) == a
        assert all(v[r] == 0 for v in kernel for r in range(a, b))
        for t in (Fraction(2), Fraction(1, 3)):
            lhs = mx.matmul(d.matrix, galois_matrix(b, t))
            rhs = mx.scale(t**a, mx.matmul(galois_matrix(b - a, t), d.matrix))
            assert lhs == rhs
            assert d.is_galois_equivariant(t)
        assert all(d.is_monodromy_equivariant(n) for n in (-2, -1, 1, 2))


# -- non-semisimplicity -----------------------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 7, 11, 19, 23])
def test_frobenius_witness(p):
    g = nonsemisimple_witness(p)
    assert g == F(GF(2), WITNESS_MATRIX)
    assert is_nonsemisimple_involution(g)


def test_frobenius_witness_direct():
    # p^-1 mod 4 = 3 for p = 3 mod 4; c_2^1(3) = 3 is odd
    t = invert_unit(3, 2, 2)
    assert t.residue == 3
    assert galois_matrix(3, t, GF(2)) == F(GF(2), WITNESS_MATRIX)


def test_frobenius_witness_refuses_other_primes():
    with pytest.raises(ValueError):
        nonsemisimple_witness(5)
    # and for p = 1 mod 4 the action really is trivial on L_3
    assert galois_matrix(3, invert_unit(5, 2, 2), GF(2)) == ident(3, GF(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(-6, 6), st.integers(-6, 6))
def test_monodromy_group_law_random(a, m, n):
    lhs = mx.matmul(monodromy_matrix(a, m), monodromy_matrix(a, n))
    assert lhs == monodromy_matrix(a, m + n)
