"""Integer partitions and the single-column zonal polynomials.

``zonal_F(ell, p)`` is the polynomial in power sums

    F_ell = (-1)**ell * sum over |lambda| = ell of
            prod_j (1/sigma_j!) * (-p[ell_j] / ell_j)**sigma_j

which is ``Z_(1^ell) / ell!``, i.e. the elementary symmetric function
``e_ell`` written in power sums. :func:`elementary_from_powersums` reaches
the same value through Newton's identities and serves as a second route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

__all__ = [
    "Partition",
    "enumerate_partitions",
    "partition_count",
    "zonal_F",
    "elementary_from_powersums",
    "exp_series_coefficients",
]


@dataclass(frozen=True)
class Partition:
    """Partition in frequency form: ``((part, multiplicity), ...)``.

    Parts are distinct and strictly decreasing.
    """

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for part, mult in self.parts:
            if part < 1 or mult < 1:
                raise ValueError(f"invalid part/multiplicity {(part, mult)}")
            if prev is not None and part >= prev:
                raise ValueError("parts must be strictly decreasing")
            prev = part

    @property
    def g(self) -> int:
        """Number of distinct parts."""
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(part * mult for part, mult in self.parts)

    def as_list(self) -> list[int]:
        """Expanded weakly decreasing list of parts."""
        return [part for part, mult in self.parts for _ in range(mult)]

    @classmethod
    def from_list(cls, parts: Sequence[int]) -> "Partition":
        freq: dict[int, int] = {}
        for p in parts:
            freq[p] = freq.get(p, 0) + 1
        return cls(tuple(sorted(freq.items(), reverse=True)))

    def __str__(self):
        if not self.parts:
            return "()"
        return "(" + " ".join(f"{p}^{m}" for p, m in self.parts) + ")"


def _descending(n: int, largest: int):
    if n == 0:
        yield []
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield [first] + rest


def enumerate_partitions(ell: int) -> list[Partition]:
    """All partitions of ``ell`` in reverse-lexicographic order.

    >>> [str(p) for p in enumerate_partitions(3)]
    ['(3^1)', '(2^1 1^1)', '(1^3)']
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return [Partition.from_list(parts) for parts in _descending(ell, ell)]


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of ``n`` by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def _one_like(p):
    return p[0] * 0 + 1 if len(p) else 1


def zonal_F(ell: int, p: Sequence) -> object:
    """Evaluate ``F_ell`` at power sums ``p = (p_1, ..., p_ell)`` by the partition sum.

    Works for any field-like element type (``Fraction``, ``QSqrt2``,
    ``float``); exact inputs give exact output.
    """
    if len(p) < ell:
        raise ValueError(f"need at least {ell} power sums, got {len(p)}")
    if ell == 0:
        return _one_like(p)
    total = None
    for lam in enumerate_partitions(ell):
        term = None
        for part, mult in lam.parts:
            base = -p[part - 1] * Fraction(1, part)
            factor = base**mult * Fraction(1, factorial(mult))
            term = factor if term is None else term * factor
        total = term if total is None else total + term
    return total if ell % 2 == 0 else -total


def elementary_from_powersums(ell: int, p: Sequence) -> object:
    """``e_ell`` from power sums via Newton's identities.

    ``e_k = (1/k) * sum_{r=1..k} (-1)**(r-1) * p_r * e_{k-r}``.
    """
    if len(p) < ell:
        raise ValueError(f"need at least {ell} power sums, got {len(p)}")
    e = [_one_like(p)]
    for k in range(1, ell + 1):
        acc = None
        for r in range(1, k + 1):
            t = p[r - 1] * e[k - r]
            if r % 2 == 0:
                t = -t
            acc = t if acc is None else acc + t
        e.append(acc * Fraction(1, k))
    return e[ell]


def exp_series_coefficients(p: Sequence, order: int) -> list:
    """Taylor coefficients of ``exp(sum_r (-1)**(r-1) p_r z**r / r)`` up to ``z**order``.

    Computed as the truncated sum ``sum_k g**k / k!`` with explicit
    series multiplication, independent of both the partition sum and
    Newton's recurrence.
    """
    one = _one_like(p)
    zero = one * 0
    g = [zero] + [
        (p[r - 1] if r % 2 else -p[r - 1]) * Fraction(1, r) for r in range(1, order + 1)
    ]
    result = [one] + [zero] * order
    power = [one] + [zero] * order
    # g has no constant term, so g**k only reaches z**order for k <= order
    for k in range(1, order + 1):
        power = [
            sum((power[i] * g[d - i] for i in range(d)), zero) for d in range(order + 1)
        ]
        inv = Fraction(1, factorial(k))
        result = [r + c * inv for r, c in zip(result, power)]
    return result
