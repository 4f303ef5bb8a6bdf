import random
from fractions import Fraction as F

import pytest

from _oracles import moment_quad, rho_entry_quad, sign_by_decimal
from ginibre.numberfield import QSqrt2
from ginibre.rho import (
    RhoMatrix,
    _entry_terms,
    laguerre,
    moment_I,
    moment_table,
    rho_even,
    rho_even_entry,
    rho_matrix,
    rho_odd,
)


def laguerre_recurrence(j, a, x):
    if j < 0:
        return F(0)
    p, c = F(1), 1 + a - x
    if j == 0:
        return p
    for k in range(1, j):
        p, c = c, ((2 * k + 1 + a - x) * c - (k + a) * p) / (k + 1)
    return c


def test_laguerre_examples():
    assert laguerre(1, -1).coefficients == (0, -1)
    assert laguerre(-1, 5).coefficients == ()
    L = laguerre(1, 1)
    assert L.coefficients == (2, -1)
    for x in (F(0), F(1)):
        assert L(x) == laguerre_recurrence(1, 1, x)


def test_laguerre_rejects_low_degree():
    with pytest.raises(ValueError):
        laguerre(-2, 0)


@pytest.mark.parametrize("j", range(0, 9))
@pytest.mark.parametrize("alpha", range(-8, 6))
def test_laguerre_matches_recurrence(j, alpha):
    L = laguerre(j, alpha)
    for x in (F(-3, 2), F(1, 3), F(2)):
        assert L(x) == laguerre_recurrence(j, alpha, x)


def test_negative_superscript_reduction():
    rng = random.Random(3)
    for m in range(1, 6):
        for j in range(m, m + 5):
            L = laguerre(j, -m)
            R = laguerre(j - m, m)
            assert L.lowest_power() >= m
            for _ in range(4):
                x = F(rng.randint(-30, 30), rng.randint(1, 7))
                rhs = (-x) ** m * F(_fact(j - m), _fact(j)) * R(x)
                assert L(x) == rhs


def _fact(k):
    from math import factorial

    return factorial(k)


def test_moment_examples():
    assert moment_I(0) == QSqrt2(F(-1, 2), F(1, 2))
    assert moment_I(1) == QSqrt2(F(1, 2), F(-1, 4))
    assert float(moment_I(0)) == pytest.approx(0.207106781186548, rel=1e-14)
    assert float(moment_I(1)) == pytest.approx(0.146446609406726, rel=1e-14)
    # frozen from tanh-sinh quadrature at 30 digits
    assert float(moment_I(3)) == pytest.approx(0.613514613495402, rel=1e-13)


def test_moment_recursion_invariant():
    from math import factorial

    table = moment_table(20)
    for m in range(1, 21):
        rhs = table[m - 1] * (-m) + QSqrt2(0, F(factorial(2 * m), 2 * 4**m * factorial(m)))
        assert table[m] == rhs


@pytest.mark.parametrize("m", range(0, 21))
def test_moments_match_quadrature(m):
    q = moment_quad(m)
    assert abs(float(moment_I(m)) - float(q)) / float(q) < 1e-10


def test_rho_even_examples():
    assert rho_even(2).entries == ((QSqrt2(-1, 1),),)
    assert rho_even_entry(0, 1) == QSqrt2(0, F(1, 2))


def test_rho_odd_examples():
    assert rho_odd(3).entries == ((QSqrt2(-1, 2),),)
    assert rho_odd(1).size == 0
    assert rho_odd(5).size == 2


def test_flavor_errors():
    with pytest.raises(ValueError):
        rho_even(3)
    with pytest.raises(ValueError):
        rho_even(0)
    with pytest.raises(ValueError):
        rho_odd(4)
    with pytest.raises(ValueError):
        RhoMatrix(4, "odd", ())


@pytest.mark.parametrize("n", range(1, 25))
def test_size_and_flavor(n):
    rho = rho_matrix(n)
    assert rho.size == n // 2
    assert rho.flavor == ("even" if n % 2 == 0 else "odd")


@pytest.mark.parametrize("n", range(2, 25, 2))
def test_even_diagonal_positive(n):
    # the odd flavor's rank-one correction can make diagonal entries negative
    rho = rho_even(n)
    for i in range(rho.size):
        assert rho[i, i].sign() == 1 == sign_by_decimal(rho[i, i])


def test_no_negative_y_powers_survive():
    for a in range(13):
        for b in range(13):
            assert all(idx >= 0 for idx in _entry_terms(a, b))


@pytest.mark.parametrize("alpha", range(6))
@pytest.mark.parametrize("beta", range(6))
def test_rho_even_entries_match_quadrature(alpha, beta):
    exact = float(rho_even_entry(alpha, beta))
    q = float(rho_entry_quad(alpha, beta))
    assert abs(exact - q) <= 1e-8 * abs(q)


def test_json_dump():
    import json

    d = json.loads(rho_matrix(5).to_json())
    assert d["n"] == 5 and d["flavor"] == "odd" and d["size"] == 2
    assert QSqrt2.parse(d["entries"][0][0]) == rho_odd(5)[0, 0]
