"""Exact arithmetic in the real quadratic field Q[sqrt(2)].

Elements are stored as ``a + b*sqrt2`` with :class:`fractions.Fraction`
components, always reduced. Everything here is immutable and pure.
"""

from __future__ import annotations

import json
import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Union

__all__ = [
    "QSqrt2",
    "qs2_add",
    "qs2_mul",
    "qs2_sign",
    "qs2_to_decimal",
    "SQRT2",
    "ZERO",
    "ONE",
]

Rational = Union[int, Fraction]

_CANON = re.compile(
    r"^\s*(?P<a>[+-]?\d+/\d+)\s*(?P<s>[+-])\s*(?P<b>\d+/\d+)\*sqrt2\s*$"
)


class QSqrt2:
    """Number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return self._a

    @property
    def b(self) -> Fraction:
        """Coefficient of sqrt(2)."""
        return self._b

    @classmethod
    def coerce(cls, x) -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QSqrt2")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(self._a + other._a, self._b + other._b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self._a, -self._b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(self._a - other._a, self._b - other._b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._a * other, self._b * other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        return QSqrt2(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        """Galois conjugate ``a - b*sqrt(2)``."""
        return QSqrt2(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2*b**2``."""
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> "QSqrt2":
        if not self:
            raise ZeroDivisionError("QSqrt2 division by zero")
        nrm = self.norm()
        # sqrt2 is irrational, so a nonzero element has a nonzero norm
        assert nrm != 0, "nonzero element with zero norm"
        return QSqrt2(self._a / nrm, -self._b / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("QSqrt2 division by zero")
            return QSqrt2(self._a / other, self._b / other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return self._a == other._a and self._b == other._b

    def __hash__(self):
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b))

    def sign(self) -> int:
        return qs2_sign(self)

    def __lt__(self, other):
        return qs2_sign(self - other) < 0

    def __le__(self, other):
        return qs2_sign(self - other) <= 0

    def __gt__(self, other):
        return qs2_sign(self - other) > 0

    def __ge__(self, other):
        return qs2_sign(self - other) >= 0

    # -- conversions --------------------------------------------------------

    def __float__(self):
        return float(Decimal(qs2_to_decimal(self, 25)))

    def to_decimal(self, digits: int = 6) -> str:
        return qs2_to_decimal(self, digits)

    def __str__(self):
        a, b = self._a, self._b
        sign = "-" if b < 0 else "+"
        return (
            f"{a.numerator}/{a.denominator} {sign} "
            f"{abs(b.numerator)}/{b.denominator}*sqrt2"
        )

    def __repr__(self):
        return f"QSqrt2({self._a!s}, {self._b!s})"

    @classmethod
    def parse(cls, text: str) -> "QSqrt2":
        """Inverse of ``str``: parse ``"p/q + r/s*sqrt2"``."""
        m = _CANON.match(text)
        if m is None:
            raise ValueError(f"not a canonical QSqrt2 string: {text!r}")
        b = Fraction(m["b"])
        return cls(Fraction(m["a"]), -b if m["s"] == "-" else b)

    def to_json(self) -> dict:
        return {"a": _frac_str(self._a), "b": _frac_str(self._b)}

    @classmethod
    def from_json(cls, obj) -> "QSqrt2":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(Fraction(obj["a"]), Fraction(obj["b"]))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


ZERO = QSqrt2(0, 0)
ONE = QSqrt2(1, 0)
SQRT2 = QSqrt2(0, 1)


def qs2_add(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x + y


def qs2_mul(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x * y


def qs2_sign(x: QSqrt2) -> int:
    """Exact sign of ``a + b*sqrt(2)`` using rational arithmetic only."""
    a, b = x.a, x.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sb == 0 or sa == sb:
        return sa
    # mixed signs: the term with the larger square wins
    diff = a * a - 2 * b * b
    if diff > 0:
        return sa
    if diff < 0:
        return sb
    return 0


def qs2_to_decimal(x: QSqrt2, digits: int = 6) -> str:
    """Correctly rounded decimal string with ``digits`` fractional digits.

    sqrt(2) is expanded with enough guard digits that the rounding
    decision is exact: when the expansion lands too close to a rounding
    boundary the precision is doubled and the evaluation repeated.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    a, b = x.a, x.b
    if not b:
        return _round_fraction(a, digits)
    scale = 10**digits
    guard = 20
    while True:
        prec = digits + guard
        # floor(sqrt(2) * 10**prec) by integer square root, bounds exact
        s_lo = isqrt(2 * 10 ** (2 * prec))
        lo = a + b * Fraction(s_lo if b > 0 else s_lo + 1, 10**prec)
        hi = a + b * Fraction(s_lo + 1 if b > 0 else s_lo, 10**prec)
        r_lo = _round_half_even(lo * scale)
        r_hi = _round_half_even(hi * scale)
        if r_lo == r_hi:
            return _format_scaled(r_lo, digits)
        guard *= 2


def _round_half_even(v: Fraction) -> int:
    q, r = divmod(v.numerator, v.denominator)
    twice = 2 * r
    if twice > v.denominator or (twice == v.denominator and q % 2 == 1):
        q += 1
    return q


def _round_fraction(v: Fraction, digits: int) -> str:
    return _format_scaled(_round_half_even(v * 10**digits), digits)


def _format_scaled(n: int, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(50, len(str(abs(n))) + digits + 5)
        d = Decimal(n).scaleb(-digits).quantize(
            Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN
        )
    return f"{d:f}"
