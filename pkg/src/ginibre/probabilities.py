"""Exact probabilities of ``k`` real eigenvalues for real Ginibre matrices.

Two exact routes share only the matrix ``rho``:

* :func:`probability_table` takes power sums ``tr rho**j`` and feeds them to
  the partition sum ``F_ell``: ``p[n, n-2 ell] = p[n, n] * F_ell``.
* :func:`generating_function` expands ``p[n, n] * det(1 + z rho)`` with the
  Faddeev-LeVerrier recursion.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .numberfield import ONE, SQRT2, ZERO, QSqrt2, qs2_to_decimal
from .partitions import zonal_F
from .rho import RhoMatrix, rho_matrix

__all__ = [
    "p_all_real",
    "power_sums",
    "ProbabilityRow",
    "ProbabilityTable",
    "probability_table",
    "GeneratingFunction",
    "generating_function",
    "char_coefficients",
    "expected_real_count",
    "expected_real_count_formula",
]

Matrix = list[list[QSqrt2]]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    cols = list(zip(*B))
    return [
        [sum((A[i][k] * cols[j][k] for k in range(n)), ZERO) for j in range(n)]
        for i in range(n)
    ]


def _trace(A: Matrix) -> QSqrt2:
    return sum((A[i][i] for i in range(len(A))), ZERO)


def p_all_real(n: int) -> QSqrt2:
    """``2**(-n(n-1)/4)`` exactly, as a power of 2 times ``1`` or ``sqrt2/2``."""
    if n < 1:
        raise ValueError("n must be positive")
    q, s = divmod(n * (n - 1) // 2, 2)
    value = QSqrt2(Fraction(1, 2**q))
    return value * QSqrt2(0, Fraction(1, 2)) if s else value


def power_sums(rho: RhoMatrix, upto: int | None = None) -> list[QSqrt2]:
    """``[tr rho, tr rho**2, ..., tr rho**upto]`` by exact repeated multiplication."""
    upto = rho.size if upto is None else upto
    A = rho.rows()
    out = []
    P = A
    for j in range(1, upto + 1):
        if j > 1:
            P = _matmul(P, A)
        out.append(_trace(P))
    return out


@dataclass(frozen=True)
class ProbabilityRow:
    k: int
    exact: QSqrt2
    decimal: str


@dataclass(frozen=True)
class ProbabilityTable:
    """Rows ordered by decreasing ``k`` (``k = n, n-2, ...``)."""

    n: int
    rows: tuple[ProbabilityRow, ...]

    def __getitem__(self, k: int) -> QSqrt2:
        for row in self.rows:
            if row.k == k:
                return row.exact
        raise KeyError(k)

    def total(self) -> QSqrt2:
        return sum((r.exact for r in self.rows), ZERO)

    def as_dict(self) -> dict[int, QSqrt2]:
        return {r.k: r.exact for r in self.rows}

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "rows": [
                    {"k": r.k, "exact": str(r.exact), "decimal": r.decimal}
                    for r in self.rows
                ],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "exact", "decimal"])
        for r in self.rows:
            w.writerow([self.n, r.k, str(r.exact), r.decimal])
        return buf.getvalue()


def probability_table(n: int, digits: int = 6) -> ProbabilityTable:
    """All ``p[n, k]`` from power sums of ``rho`` and the partition sum."""
    if n < 1:
        raise ValueError("n must be positive")
    rho = rho_matrix(n)
    p = power_sums(rho)
    pnn = p_all_real(n)
    rows = []
    for ell in range(n // 2 + 1):
        value = pnn * zonal_F(ell, p) if ell else pnn
        rows.append(ProbabilityRow(n - 2 * ell, value, qs2_to_decimal(value, digits)))
    return ProbabilityTable(n, tuple(rows))


def char_coefficients(A: Matrix) -> list[QSqrt2]:
    """Coefficients ``[c_0, ..., c_m]`` of ``det(1 + z A) = sum c_l z**l``.

    Faddeev-LeVerrier: with ``M_1 = I`` and ``M_{k+1} = A M_k + a_k I``,
    ``a_k = -tr(A M_k) / k`` gives ``det(x I - A) = sum a_k x**(m-k)``; the
    reversed polynomial has ``c_l = (-1)**l a_l``.
    """
    m = len(A)
    a = [ONE]
    M = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    for k in range(1, m + 1):
        AM = _matmul(A, M)
        ak = _trace(AM) * Fraction(-1, k)
        a.append(ak)
        M = [[AM[i][j] + (ak if i == j else ZERO) for j in range(m)] for i in range(m)]
    # Cayley-Hamilton: A M_m + a_m I = 0
    assert all(not x for row in M for x in row), "Faddeev-LeVerrier residual"
    return [ak if l % 2 == 0 else -ak for l, ak in enumerate(a)]


@dataclass(frozen=True)
class GeneratingFunction:
    """``G_n(z) = sum_l coefficients[l] z**l`` with ``coefficients[l] = p[n, n-2l]``."""

    n: int
    coefficients: tuple[QSqrt2, ...]

    def __call__(self, z) -> QSqrt2:
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "coefficients": [
                    {"ell": l, "k": self.n - 2 * l, "exact": str(c)}
                    for l, c in enumerate(self.coefficients)
                ],
                "sum": str(self(ONE)),
            },
            indent=2,
        )


def generating_function(n: int) -> GeneratingFunction:
    """``p[n, n] * det(1 + z rho)`` expanded exactly in ``z``."""
    if n < 1:
        raise ValueError("n must be positive")
    pnn = p_all_real(n)
    coeffs = char_coefficients(rho_matrix(n).rows())
    return GeneratingFunction(n, tuple(pnn * c for c in coeffs))


def expected_real_count_formula(n: int, tol: float = 1e-16) -> float:
    """``1/2 + sqrt2 * 2F1(1, -1/2; n; 1/2) / B(n, 1/2)`` in floating point.

    The hypergeometric series is summed term by term until a term drops
    below ``tol`` relative to the partial sum.
    """
    if n < 1:
        raise ValueError("n must be positive")
    term, total, k = 1.0, 1.0, 0
    while True:
        # ratio of consecutive terms: (1+k)(-1/2+k) / ((n+k)(k+1)) * 1/2
        term *= (k - 0.5) / (n + k) * 0.5
        total += term
        k += 1
        if abs(term) < tol * abs(total):
            break
    beta = math.exp(math.lgamma(n) + math.lgamma(0.5) - math.lgamma(n + 0.5))
    return 0.5 + math.sqrt(2.0) * total / beta


def expected_real_count(n: int) -> tuple[QSqrt2, float]:
    """Exact ``sum_k k p[n, k]`` and the hypergeometric closed form."""
    table = probability_table(n)
    exact = sum((r.exact * r.k for r in table.rows), ZERO)
    return exact, expected_real_count_formula(n)
