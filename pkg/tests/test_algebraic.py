import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symgraph.algebraic import (
    AlgebraicValue,
    RingMismatchError,
    parse_value,
    q_half_power,
    sqrt_q,
)

rationals = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=60)


def values(q):
    return st.builds(lambda a, b: AlgebraicValue(a, b, q), rationals, rationals)


def test_conjugate_product():
    x = AlgebraicValue(1, 1, 6)
    y = AlgebraicValue(1, -1, 6)
    assert x * y == AlgebraicValue(-5, 0, 6)


def test_perfect_square_folds():
    assert AlgebraicValue(0, 1, 4) == AlgebraicValue(2, 0, 4)
    assert AlgebraicValue(0, 1, 4).b == 0


def test_componentwise_addition():
    lhs = AlgebraicValue(Fraction(1, 2), 0, 2) + AlgebraicValue(Fraction(1, 2), 1, 2)
    assert lhs == AlgebraicValue(1, 1, 2)


def test_half_powers():
    assert q_half_power(6, 2) == AlgebraicValue(6, 0, 6)
    assert q_half_power(6, -1) == AlgebraicValue(0, Fraction(1, 6), 6)
    assert q_half_power(2, 3) == AlgebraicValue(0, 2, 2)


def test_float_conversion():
    assert float(AlgebraicValue(1, 0, 2)) == 1.0
    assert float(AlgebraicValue(0, 1, 2)) == 1.4142135623730951
    # independent root: integer square root of 6 * 10^40
    root6 = math.isqrt(6 * 10**40) / 10**20
    got = float(AlgebraicValue(Fraction(-1, 2), Fraction(1, 3), 6))
    assert got == pytest.approx(-0.5 + root6 / 3, rel=1e-15)


def test_mismatched_rings_raise():
    with pytest.raises(RingMismatchError):
        AlgebraicValue(1, 1, 2) + AlgebraicValue(1, 1, 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        AlgebraicValue(1, 0, 6) / AlgebraicValue(0, 0, 6)


@given(values(6), values(6))
def test_float_respects_products(x, y):
    lhs = float(x * y)
    rhs = float(x) * float(y)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@given(st.integers(min_value=-64, max_value=64), st.sampled_from([2, 3, 4, 6, 9]))
def test_half_power_inverse(m, q):
    assert q_half_power(q, m) * q_half_power(q, -m) == 1


@given(values(6))
def test_canonicalization_idempotent(x):
    assert AlgebraicValue(x.a, x.b, x.q) == x


@given(values(4))
def test_square_ring_is_rational(x):
    assert x.b == 0


@given(values(6))
def test_division_roundtrip(x):
    if not x.is_zero():
        y = AlgebraicValue(Fraction(3, 7), Fraction(-2, 5), 6)
        assert (y / x) * x == y


@given(values(6))
def test_text_roundtrip(x):
    assert parse_value(str(x), 6) == x


def test_parse_plain_forms():
    assert parse_value("3", 6) == AlgebraicValue(3, 0, 6)
    assert parse_value("-1/2", 6) == AlgebraicValue(Fraction(-1, 2), 0, 6)
    assert parse_value("sqrt(6)", 6) == sqrt_q(6)
    assert parse_value("1/2+1/3*sqrt(6)", 6) == AlgebraicValue(Fraction(1, 2), Fraction(1, 3), 6)
    with pytest.raises(ValueError):
        parse_value("nonsense", 6)
    with pytest.raises(RingMismatchError):
        parse_value("sqrt(5)", 6)
