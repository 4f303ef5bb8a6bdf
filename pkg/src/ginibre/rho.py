"""Exact construction of the model-dependent matrix ``rho`` in Q[sqrt2].

Each even-flavor entry is an integral over ``y`` in (0, inf) of
``y**(2d-1) * exp(y**2) * erfc(sqrt(2) y)`` times a combination of
generalized Laguerre polynomials in ``-2 y**2`` (``d = beta - alpha``).
Expanding the Laguerre polynomials turns the entry into a finite sum of
odd moments

    I_m = int_0^inf y**(2m+1) exp(y**2) erfc(sqrt(2) y) dy,

which obey ``I_0 = (sqrt2 - 1)/2`` and
``I_m = -m I_{m-1} + sqrt2 (2m)! / (2 * 4**m * m!)`` (integration by
parts). No transcendental function is ever evaluated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .numberfield import ONE, SQRT2, ZERO, QSqrt2

__all__ = [
    "LaguerrePoly",
    "laguerre",
    "moment_I",
    "moment_table",
    "rho_even_entry",
    "RhoMatrix",
    "rho_even",
    "rho_odd",
    "rho_matrix",
]


def _gbinom(top: int, k: int) -> int:
    """Binomial coefficient ``top choose k`` for any integer ``top``, ``k >= 0``."""
    if k < 0:
        return 0
    if top >= 0:
        return comb(top, k)
    # (-1)**k * C(k - top - 1, k)
    return (-1) ** k * comb(k - top - 1, k)


@dataclass(frozen=True)
class LaguerrePoly:
    """Generalized Laguerre polynomial ``L_j^alpha`` as exact monomial coefficients.

    ``coefficients[i]`` multiplies ``x**i``.
    """

    degree: int
    superscript: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def lowest_power(self) -> int:
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return len(self.coefficients)


def laguerre(j: int, alpha: int) -> LaguerrePoly:
    """Expand ``L_j^alpha(x) = sum_i (-1)**i C(j+alpha, j-i) x**i / i!``.

    The generalized binomial makes the negative-superscript case automatic:
    for ``alpha = -m`` with ``j >= m`` the coefficients below ``x**m``
    vanish, reproducing ``L_j^{-m}(x) = (-x)**m (j-m)!/j! L_{j-m}^m(x)``.
    ``j = -1`` gives the zero polynomial.
    """
    if j < -1:
        raise ValueError(f"Laguerre degree must be >= -1, got {j}")
    if j == -1:
        return LaguerrePoly(j, alpha, ())
    coeffs = tuple(
        Fraction((-1) ** i * _gbinom(j + alpha, j - i), factorial(i))
        for i in range(j + 1)
    )
    return LaguerrePoly(j, alpha, coeffs)


@lru_cache(maxsize=None)
def _moments(upto: int) -> tuple[QSqrt2, ...]:
    out = [QSqrt2(Fraction(-1, 2), Fraction(1, 2))]
    for m in range(1, upto + 1):
        c = Fraction(factorial(2 * m), 2 * 4**m * factorial(m))
        out.append(out[-1] * (-m) + SQRT2 * c)
    return tuple(out)


def moment_table(upto: int) -> tuple[QSqrt2, ...]:
    """``(I_0, ..., I_upto)``."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    return _moments(upto)


def moment_I(m: int) -> QSqrt2:
    """Exact ``int_0^inf y**(2m+1) exp(y**2) erfc(sqrt(2) y) dy``."""
    if m < 0:
        raise ValueError("moment index must be nonnegative")
    return _moments(m)[m]


def _entry_terms(alpha: int, beta: int) -> dict[int, Fraction]:
    """Map moment index -> rational weight for one even-flavor entry."""
    d = beta - alpha
    weights: dict[int, Fraction] = {}

    def add(poly: LaguerrePoly, scale: int, shift: int):
        # poly evaluated at -2 y**2, times scale * y**(2 shift + 1)
        for i, c in enumerate(poly.coefficients):
            if not c:
                continue
            idx = shift + i
            if idx < 0:
                raise ArithmeticError(
                    f"negative power of y survived reduction at ({alpha}, {beta})"
                )
            weights[idx] = weights.get(idx, 0) + scale * c * (-2) ** i

    # y**(2d-1) * (2 alpha + 1) L_{2a+1}^{2d-1}(-2y^2): y**(2(d+i-1)+1)
    add(laguerre(2 * alpha + 1, 2 * d - 1), 2 * alpha + 1, d - 1)
    # y**(2d-1) * 2 y**2 L_{2a-1}^{2d+1}(-2y^2): y**(2(d+i)+1)
    add(laguerre(2 * alpha - 1, 2 * d + 1), 2, d)
    return weights


@lru_cache(maxsize=None)
def rho_even_entry(alpha: int, beta: int) -> QSqrt2:
    """Exact even-flavor entry ``rho[alpha, beta]`` (independent of ``n``)."""
    if alpha < 0 or beta < 0:
        raise ValueError("indices must be nonnegative")
    terms = _entry_terms(alpha, beta)
    if not terms:
        return ZERO
    moments = moment_table(max(terms))
    acc = ZERO
    for idx, w in sorted(terms.items()):
        if w:
            acc = acc + moments[idx] * w
    return acc


@dataclass(frozen=True)
class RhoMatrix:
    """The ``[n/2] x [n/2]`` matrix whose traces of powers feed ``F_ell``."""

    n: int
    flavor: str
    entries: tuple[tuple[QSqrt2, ...], ...]

    def __post_init__(self):
        if self.flavor != ("even" if self.n % 2 == 0 else "odd"):
            raise ValueError(f"flavor {self.flavor!r} does not match n={self.n}")
        if len(self.entries) != self.n // 2:
            raise ValueError("matrix size must be n // 2")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[QSqrt2]]:
        return [list(r) for r in self.entries]

    def trace(self) -> QSqrt2:
        return sum((self.entries[i][i] for i in range(self.size)), ZERO)

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "flavor": self.flavor,
                "size": self.size,
                "entries": [[str(x) for x in row] for row in self.entries],
            },
            indent=2,
        )


def rho_even(n: int) -> RhoMatrix:
    if n < 2 or n % 2:
        raise ValueError(f"rho_even needs an even n >= 2, got {n}")
    m = n // 2
    entries = tuple(tuple(rho_even_entry(a, b) for b in range(m)) for a in range(m))
    return RhoMatrix(n, "even", entries)


def rho_odd(n: int) -> RhoMatrix:
    """Odd flavor: a rank-one correction of the even entries using column ``m``."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"rho_odd needs an odd n >= 1, got {n}")
    m = (n - 1) // 2
    if m == 0:
        return RhoMatrix(n, "odd", ())
    scale = Fraction(factorial(m), factorial(2 * m))
    coef = [
        scale * (-4) ** (m - b) * Fraction(factorial(2 * b), factorial(b))
        for b in range(m)
    ]
    entries = tuple(
        tuple(
            rho_even_entry(a, b) - rho_even_entry(a, m) * coef[b] for b in range(m)
        )
        for a in range(m)
    )
    return RhoMatrix(n, "odd", entries)


def rho_matrix(n: int) -> RhoMatrix:
    """``rho`` of the flavor matching the parity of ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return rho_even(n) if n % 2 == 0 else rho_odd(n)
