from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unipotent.coeffs import (
    GF,
    QQ,
    FieldMismatchError,
    NotAUnitError,
    PrimeField,
    PrimeFieldElem,
    ResidueElem,
    field_arithmetic,
    field_from_spec,
    format_exact,
    invert_unit,
    is_prime,
    parse_exact,
)

PRIMES = [2, 3, 5, 7, 11]


def test_rational_sum_is_exact():
    assert field_arithmetic(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)


def test_characteristic_two():
    f2 = GF(2)
    assert field_arithmetic(f2(1), f2(1), "+") == f2(0)


def test_residue_product():
    x, y = ResidueElem(5, 2, 3), ResidueElem(3, 2, 3)
    assert field_arithmetic(x, y, "*") == ResidueElem(7, 2, 3)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        field_arithmetic(GF(2)(1), GF(3)(1), "+")
    with pytest.raises(FieldMismatchError):
        field_arithmetic(GF(5)(1), Fraction(1, 2), "*")
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + GF(5)(1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arithmetic(Fraction(1), Fraction(0), "/")
    with pytest.raises(ZeroDivisionError):
        GF(7)(3) / GF(7)(0)


@pytest.mark.parametrize("u, p, n, expected", [(3, 2, 3, 3), (5, 3, 2, 2), (1, 5, 1, 1)])
def test_invert_unit(u, p, n, expected):
    assert invert_unit(u, p, n).residue == expected


def test_invert_unit_brute_force():
    for u in range(1, 9):
        if u % 3:
            found = next(v for v in range(9) if u * v % 9 == 1)
            assert invert_unit(u, 3, 2).residue == found


def test_non_unit_rejected():
    with pytest.raises(NotAUnitError):
        invert_unit(2, 2, 3)
    with pytest.raises(NotAUnitError):
        ResidueElem(6, 3, 2).inverse()


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeFieldElem(1, 6)


def test_field_from_spec():
    assert field_from_spec(None) == QQ
    assert field_from_spec("Q") == QQ
    assert field_from_spec(5) == GF(5)
    assert QQ.characteristic == 0 and GF(3).characteristic == 3


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rationals_stay_reduced():
    x = QQ(Fraction(6, 8)) + QQ(Fraction(1, 4))
    assert (x.numerator, x.denominator) == (1, 1)
    assert Fraction(-2, -4) == Fraction(1, 2)


@pytest.mark.parametrize("x", [Fraction(3, 7), Fraction(-5), GF(5)(3), ResidueElem(5, 2, 3)])
def test_exact_string_round_trip(x):
    s = format_exact(x)
    assert parse_exact(s) == x


def test_prime_field_coerces_rationals():
    assert GF(5)(Fraction(1, 2)) == GF(5)(3)
    with pytest.raises(ZeroDivisionError):
        GF(5)(Fraction(1, 5))


# -- field axioms on random samples ------------------------------------------

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


@given(fractions, fractions, fractions)
def test_rational_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * (1 / x) == 1


@st.composite
def prime_triples(draw):
    p = draw(st.sampled_from(PRIMES))
    xs = [GF(p)(draw(st.integers(-100, 100))) for _ in range(3)]
    return p, xs


@given(prime_triples())
def test_prime_field_axioms(case):
    p, (x, y, z) = case
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert x ** (p - 1) == 1


@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_residue_ring_axioms(p, n, a, b):
    x, y = ResidueElem(a, p, n), ResidueElem(b, p, n)
    assert (x * y).residue == a * b % p**n
    assert (x + y).residue == (a + b) % p**n
    if a % p:
        assert (x * x.inverse()).residue == 1
        assert (invert_unit(a, p, n) * a).residue == 1
