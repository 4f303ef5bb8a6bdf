"""Floating-point checks of the skew-orthogonal kernel machinery.

The antisymmetric kernel ``K_n(u, v) = 1/2 sum_{jk} q_j(u) mu[j, k] q_k(v)``
is built on the monic GOE skew-orthogonal polynomials (scaled physicists'
Hermite polynomials). Two numerical experiments use it:

* :func:`theorem_check_ell1` integrates ``(2/i) K_n(z, conj z)`` against
  ``d alpha(z) = erfc(sqrt2 Im z) exp(-(z**2 + conj(z)**2)/2) d^2 z`` over the
  upper half-plane and compares with the exact ``tr rho``.
* :func:`projection_failure_demo` shows that ``K_n`` does not reproduce
  itself under the same measure.

Quadrature is a product rule: Gauss-Hermite in ``Re z`` (weight
``exp(-x**2)``, exact for the polynomial kernel) and adaptive
``scipy.integrate.quad`` in ``Im z`` on ``(0, inf)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from .rho import rho_matrix

__all__ = [
    "hermite_coefficients",
    "KernelContext",
    "skew_orthogonal_basis",
    "skew_product_matrix",
    "mu_goe_even",
    "kernel_eval",
    "measure_weight",
    "TheoremCheck",
    "theorem_check_ell1",
    "ProjectionDemo",
    "projection_failure_demo",
    "QuadratureError",
]

SQRT_PI = math.sqrt(math.pi)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


def hermite_coefficients(j: int) -> list[int]:
    """Monomial coefficients of the physicists' Hermite polynomial ``H_j``.

    ``H_{j+1} = 2x H_j - 2j H_{j-1}``.
    """
    prev, cur = [1], [0, 2]
    if j == 0:
        return prev
    for k in range(1, j):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return cur


def _q_coeffs(j: int) -> list[Fraction]:
    h = hermite_coefficients(j)
    c = [Fraction(x, 2**j) for x in h]
    if j % 2 == 1 and j >= 3:
        i = (j - 1) // 2
        lower = hermite_coefficients(j - 2)
        for t, x in enumerate(lower):
            c[t] -= Fraction(i * x, 2 ** (j - 2))
    return c


def _gauss_moment(k: int) -> Fraction:
    """``int x**k exp(-x**2) dx / sqrt(pi)`` over the real line."""
    if k % 2:
        return Fraction(0)
    # Gamma((k+1)/2)/sqrt(pi) = (k-1)!! / 2**(k/2)
    out = Fraction(1)
    for t in range(1, k, 2):
        out *= Fraction(t, 2)
    return out


def _monomial_skew(D: int) -> list[list[Fraction]]:
    """``J[a][b] / sqrt(pi)`` with ``J[a][b] = iint exp(-(x^2+y^2)/2) sgn(y-x) x^a y^b``.

    Integration by parts in ``y`` gives
    ``J[a][b] = 2 int y^(a+b-1) exp(-y^2) dy + (b-1) J[a][b-2]`` and
    ``J[a][0] = -J[0][a]``.
    """
    J = [[Fraction(0)] * D for _ in range(D)]
    for b in range(1, D):
        J[0][b] = 2 * _gauss_moment(b - 1) + (b - 1) * (J[0][b - 2] if b >= 2 else 0)
    for a in range(1, D):
        J[a][0] = -J[0][a]
        J[a][1] = 2 * _gauss_moment(a)
        for b in range(2, D):
            J[a][b] = 2 * _gauss_moment(a + b - 1) + (b - 1) * J[a][b - 2]
    return J


def skew_product_matrix(n: int) -> list[list[Fraction]]:
    """Exact skew products ``<q_j, q_k> / sqrt(pi)`` for ``j, k < n``.

    ``<f, g> = 1/2 iint exp(-(x^2+y^2)/2) sgn(y-x) f(x) g(y) dx dy``.
    """
    J = _monomial_skew(n)
    qs = [_q_coeffs(j) for j in range(n)]
    return [
        [
            sum(
                (qa * qb * J[a][b] / 2
                 for a, qa in enumerate(qj) if qa
                 for b, qb in enumerate(qk) if qb),
                Fraction(0),
            )
            for qk in qs
        ]
        for qj in qs
    ]


def mu_goe_even(n: int) -> np.ndarray:
    """Two-band antisymmetric ``mu`` in the skew-orthogonal basis."""
    mu = np.zeros((n, n))
    for k in range(0, n - 1, 2):
        w = 2.0**k / (math.factorial(k) * SQRT_PI)
        mu[k + 1, k] = w
        mu[k, k + 1] = -w
    return mu


def _fraction_inverse(A: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(A)]
    for col in range(m):
        piv = next(r for r in range(col, m) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def _mu_odd(n: int) -> np.ndarray:
    # border the singular odd-size skew matrix with int q_j exp(-x^2/2) dx
    S = skew_product_matrix(n)
    border = []
    for j in range(n):
        # int x^t exp(-x^2/2) dx is proportional to (t-1)!! for even t
        acc = Fraction(0)
        for t, c in enumerate(_q_coeffs(j)):
            if c and t % 2 == 0:
                acc += c * _gauss_moment(t) * 2 ** (t // 2)
        border.append(acc)
    B = [row + [border[i]] for i, row in enumerate(S)]
    B.append([-x for x in border] + [Fraction(0)])
    inv = _fraction_inverse(B)
    return np.array([[float(inv[i][j]) for j in range(n)] for i in range(n)]) / SQRT_PI


@dataclass(frozen=True)
class KernelContext:
    n: int
    q_coeffs: tuple[tuple[Fraction, ...], ...]
    mu: np.ndarray

    def q_matrix(self) -> np.ndarray:
        """``(n, n)`` float array; row ``j`` holds ascending coefficients of ``q_j``."""
        Q = np.zeros((self.n, self.n))
        for j, c in enumerate(self.q_coeffs):
            Q[j, : len(c)] = [float(x) for x in c]
        return Q


def skew_orthogonal_basis(n: int) -> KernelContext:
    """Monic skew-orthogonal polynomials ``q_0..q_{n-1}`` and the matching ``mu``.

    Even ``n`` uses the closed-form two-band ``mu``; odd ``n`` inverts the
    exact skew-product matrix bordered by ``int q_j exp(-x^2/2) dx`` and keeps
    the leading ``n x n`` block.
    """
    if n < 1:
        raise ValueError("n must be positive")
    q = tuple(tuple(_q_coeffs(j)) for j in range(n))
    mu = mu_goe_even(n) if n % 2 == 0 else _mu_odd(n)
    mu.setflags(write=False)
    return KernelContext(n, q, mu)


def _q_values(ctx: KernelContext, u) -> np.ndarray:
    """``q_j(u)`` for every ``j``; output shape ``(n,) + u.shape``."""
    u = np.asarray(u, dtype=complex)
    Q = ctx.q_matrix()
    powers = np.stack([u**t for t in range(ctx.n)])
    return np.tensordot(Q, powers, axes=(1, 0))


def kernel_eval(ctx: KernelContext, u, v):
    """``K_n(u, v)``; broadcasts over array arguments."""
    qu = _q_values(ctx, u)
    qv = _q_values(ctx, v)
    out = 0.5 * np.einsum("j...,jk,k...->...", qu, ctx.mu, qv)
    return out[()] if np.ndim(out) == 0 else out


def measure_weight(x, y):
    """Density of ``d alpha`` at ``z = x + i y``: ``erfc(sqrt2 y) exp(y^2 - x^2)``."""
    return special.erfcx(math.sqrt(2.0) * y) * np.exp(-np.asarray(y) ** 2 - np.asarray(x) ** 2)


def _half_plane_integral(fn, hermite_nodes: int, epsabs: float, epsrel: float):
    """``iint_{y>0} erfc(sqrt2 y) exp(y^2 - x^2) fn(x + iy) dx dy`` for complex ``fn``."""
    xs, ws = np.polynomial.hermite.hermgauss(hermite_nodes)

    def inner(y):
        z = xs + 1j * y
        return np.dot(ws, fn(z)) * special.erfcx(math.sqrt(2.0) * y) * math.exp(-y * y)

    parts = []
    for take in (np.real, np.imag):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(
                    lambda y: take(inner(y)), 0.0, np.inf, epsabs=epsabs, epsrel=epsrel, limit=200
                )
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"y-quadrature did not converge: {exc}", float("nan"))
        parts.append((val, err))
    (re, re_err), (im, im_err) = parts
    return complex(re, im), math.hypot(re_err, im_err)


@dataclass(frozen=True)
class TheoremCheck:
    n: int
    lhs: float
    rhs: float
    rel_err: float
    quadrature_error_estimate: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rel_err": self.rel_err,
            "quadrature_error_estimate": self.quadrature_error_estimate,
        }


def theorem_check_ell1(
    n: int,
    hermite_nodes: int | None = None,
    epsabs: float = 1e-13,
    epsrel: float = 1e-12,
) -> TheoremCheck:
    """Compare ``(2/i) iint d alpha(z) K_n(z, conj z)`` with exact ``tr rho``.

    At one conjugate pair the Pfaffian is the single entry ``K_n(z, conj z)``,
    so this checks the integration formula at ``ell = 1``.
    """
    if not 2 <= n <= 8:
        raise ValueError("theorem_check_ell1 supports 2 <= n <= 8")
    ctx = skew_orthogonal_basis(n)
    nodes = hermite_nodes or n + 10
    value, err = _half_plane_integral(
        lambda z: (2 / 1j) * kernel_eval(ctx, z, np.conj(z)), nodes, epsabs, epsrel
    )
    lhs = value.real
    rhs = float(rho_matrix(n).trace())
    return TheoremCheck(n, lhs, rhs, abs(lhs - rhs) / abs(rhs), err)


@dataclass(frozen=True)
class ProjectionDemo:
    n: int
    z: complex
    zprime: complex
    lhs: complex
    rhs: complex
    gap: float
    quadrature_error_estimate: float

    def as_dict(self) -> dict:
        c = lambda w: [w.real, w.imag]
        return {
            "n": self.n,
            "z": c(self.z),
            "zprime": c(self.zprime),
            "lhs": c(self.lhs),
            "rhs": c(self.rhs),
            "gap": self.gap,
            "quadrature_error_estimate": self.quadrature_error_estimate,
        }


DEFAULT_POINTS = (1 + 1j, -1 + 2j)


def projection_failure_demo(
    n: int,
    z: complex = DEFAULT_POINTS[0],
    zprime: complex = DEFAULT_POINTS[1],
    hermite_nodes: int | None = None,
    epsabs: float = 1e-13,
    epsrel: float = 1e-12,
) -> ProjectionDemo:
    """``iint_{Im w>0} d alpha(w) K_n(z, conj w) K_n(w, z')`` against ``K_n(z, z')/2``."""
    if not 2 <= n <= 6:
        raise ValueError("projection_failure_demo supports 2 <= n <= 6")
    ctx = skew_orthogonal_basis(n)
    nodes = hermite_nodes or 2 * n + 10
    lhs, err = _half_plane_integral(
        lambda w: kernel_eval(ctx, z, np.conj(w)) * kernel_eval(ctx, w, zprime),
        nodes,
        epsabs,
        epsrel,
    )
    rhs = complex(0.5 * kernel_eval(ctx, z, zprime))
    return ProjectionDemo(n, complex(z), complex(zprime), lhs, rhs, abs(lhs - rhs), err)
