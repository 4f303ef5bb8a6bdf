import json
import random
from decimal import Decimal
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import random_qs2, sign_by_decimal
from ginibre.numberfield import ONE, SQRT2, ZERO, QSqrt2, qs2_add, qs2_mul, qs2_sign, qs2_to_decimal

fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**6)
qs2 = st.builds(QSqrt2, fractions, fractions)


def test_add_examples():
    assert qs2_add(QSqrt2(1, 1), QSqrt2(2, -1)) == QSqrt2(3, 0)
    x = QSqrt2(F(3, 7), F(-2, 5))
    assert qs2_add(ZERO, x) == x
    assert qs2_add(QSqrt2(F(1, 2), F(1, 2)), QSqrt2(F(1, 2), F(-1, 2))) == QSqrt2(1, 0)


def test_mul_examples():
    assert qs2_mul(SQRT2, SQRT2) == QSqrt2(2, 0)
    assert qs2_mul(QSqrt2(1, 1), QSqrt2(1, -1)) == QSqrt2(-1, 0)
    x = QSqrt2(F(3, 7), F(-2, 5))
    assert qs2_mul(x, ONE) == x


def test_components_stay_reduced():
    x = QSqrt2(F(2, 4), F(6, 8)) * QSqrt2(F(4, 6), 0)
    assert x.a == F(1, 3) and x.a.denominator == 3
    assert x.b.denominator == 2


@pytest.mark.parametrize(
    "x, expected",
    [(QSqrt2(1, F(-3, 4)), -1), (ZERO, 0), (QSqrt2(-1, 1), 1), (QSqrt2(3, -2), 1), (QSqrt2(-3, 2), -1)],
)
def test_sign_examples(x, expected):
    assert qs2_sign(x) == expected
    assert sign_by_decimal(x) == expected


def test_sign_agrees_with_decimal_expansion():
    rng = random.Random(20260101)
    for _ in range(10_000):
        x = random_qs2(rng)
        assert qs2_sign(x) == sign_by_decimal(x), x


def test_sign_near_cancellation():
    # 99/70 is a convergent of sqrt2, 99/70 - sqrt2 > 0
    assert qs2_sign(QSqrt2(F(99, 70), -1)) == 1
    assert qs2_sign(QSqrt2(F(-577, 408), 1)) == -1


@pytest.mark.parametrize(
    "x, digits, expected",
    [
        (QSqrt2(F(29930323227453, 17592186044416), F(-20772686238032, 17592186044416)), 6, "0.031452"),
        (QSqrt2(F(1, 8589934592)), 6, "0.000000"),
        (ONE, 3, "1.000"),
        (SQRT2, 10, "1.4142135624"),
        (QSqrt2(F(-1, 2)), 1, "-0.5"),
        (QSqrt2(F(1, 8)), 2, "0.12"),
        (QSqrt2(F(3, 8)), 2, "0.38"),
    ],
)
def test_to_decimal(x, digits, expected):
    assert qs2_to_decimal(x, digits) == expected


def test_to_decimal_rejects_zero_digits():
    with pytest.raises(ValueError):
        qs2_to_decimal(ONE, 0)


@given(qs2, st.integers(min_value=1, max_value=30))
def test_to_decimal_is_within_half_ulp(x, digits):
    import mpmath as mp

    s = qs2_to_decimal(x, digits)
    with mp.workdps(digits + 40):
        v = mp.mpf(x.a.numerator) / x.a.denominator + mp.sqrt(2) * mp.mpf(x.b.numerator) / x.b.denominator
        assert abs(mp.mpf(s) - v) <= mp.mpf(10) ** (-digits) / 2


@given(qs2, qs2, qs2)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert x * x.inverse() == ONE
        assert (y / x) * x == y


@given(qs2)
def test_canonical_string_round_trip(x):
    assert QSqrt2.parse(str(x)) == x
    assert QSqrt2.from_json(json.dumps(x.to_json())) == x


def test_canonical_form():
    assert str(QSqrt2(0, 1)) == "0/1 + 1/1*sqrt2"
    assert str(QSqrt2(F(-3, 4), F(-1, 2))) == "-3/4 - 1/2*sqrt2"
    assert QSqrt2(F(1, 2), F(-5, 3)).to_json() == {"a": "1/2", "b": "-5/3"}


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_float_and_ordering():
    assert float(SQRT2) == pytest.approx(2**0.5, rel=1e-15)
    assert QSqrt2(1, 0) < SQRT2 < QSqrt2(F(3, 2))
