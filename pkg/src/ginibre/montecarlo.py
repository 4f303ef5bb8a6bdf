"""Monte Carlo estimate of the real-eigenvalue count distribution.

Matrices have i.i.d. standard normal entries. Each one is reduced to real
Schur form by LAPACK ``dgees``; real eigenvalues are counted from the
diagonal block structure, with every 2x2 block classified by the sign of
its discriminant. This keeps ``k`` congruent to ``n`` mod 2 by construction.

Streams are spawned from one :class:`numpy.random.SeedSequence`, one per
worker, so a fixed ``(seed, workers)`` pair reproduces the counts exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.linalg import lapack

__all__ = [
    "TrialConfig",
    "EmpiricalCounts",
    "EigenSolverError",
    "sample_matrix",
    "count_real_eigenvalues",
    "estimate",
    "compare_with_exact",
]

MAX_RETRIES = 3
CHUNK = 4096


class EigenSolverError(RuntimeError):
    """Real Schur iteration failed to converge after all retries."""


@dataclass(frozen=True)
class TrialConfig:
    n: int
    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class EmpiricalCounts:
    n: int
    counts: dict[int, int]
    total: int
    failures: int = 0

    @property
    def frequencies(self) -> dict[int, float]:
        ok = self.total - self.failures
        return {k: c / ok for k, c in sorted(self.counts.items())}

    def merge(self, other: "EmpiricalCounts") -> "EmpiricalCounts":
        counts = dict(self.counts)
        for k, c in other.counts.items():
            counts[k] = counts.get(k, 0) + c
        return EmpiricalCounts(
            self.n, counts, self.total + other.total, self.failures + other.failures
        )


def sample_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n x n`` matrix of independent N(0, 1) entries."""
    return rng.standard_normal((n, n))


def _schur(M: np.ndarray) -> tuple[np.ndarray, int]:
    t, _sdim, _wr, _wi, _vs, _work, info = lapack.dgees(
        lambda wr, wi: None, M, compute_v=0, sort_t=0
    )
    return t, info


def _count_from_schur(T: np.ndarray) -> int:
    n = T.shape[0]
    sub = np.diagonal(T, -1)
    k = i = 0
    while i < n:
        if i + 1 < n and sub[i] != 0.0:
            a, b, c, d = T[i, i], T[i, i + 1], T[i + 1, i], T[i + 1, i + 1]
            half = 0.5 * (a - d)
            # ties count as two real eigenvalues
            if half * half + b * c >= 0.0:
                k += 2
            i += 2
        else:
            k += 1
            i += 1
    return k


def count_real_eigenvalues(M: np.ndarray) -> int:
    """Number of real eigenvalues of a real square matrix, from its real Schur form.

    On non-convergence the matrix is conjugated by a random orthogonal
    matrix (a deterministic sequence) and the iteration restarted.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    if M.shape[0] == 0:
        return 0
    if not np.all(np.isfinite(M)):
        raise EigenSolverError("matrix has non-finite entries")
    A = M
    for attempt in range(MAX_RETRIES + 1):
        T, info = _schur(A)
        if info == 0:
            k = _count_from_schur(T)
            assert k % 2 == M.shape[0] % 2, "parity violated"
            return k
        rng = np.random.default_rng(attempt)
        Q, _ = np.linalg.qr(rng.standard_normal(M.shape))
        A = Q @ M @ Q.T
    raise EigenSolverError(f"dgees failed to converge (info={info})")


def _run_stream(n: int, trials: int, seed_seq: np.random.SeedSequence) -> EmpiricalCounts:
    rng = np.random.default_rng(seed_seq)
    counts: dict[int, int] = {}
    failures = 0
    done = 0
    while done < trials:
        size = min(CHUNK, trials - done)
        batch = rng.standard_normal((size, n, n))
        for M in batch:
            try:
                k = count_real_eigenvalues(M)
            except EigenSolverError:
                failures += 1
                continue
            counts[k] = counts.get(k, 0) + 1
        done += size
    return EmpiricalCounts(n, counts, trials, failures)


def _split(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (i < extra) for i in range(workers)]


def estimate(config: TrialConfig) -> EmpiricalCounts:
    """Count real eigenvalues over ``config.trials`` sampled matrices."""
    streams = np.random.SeedSequence(config.seed).spawn(config.workers)
    shares = _split(config.trials, config.workers)
    jobs = [(config.n, t, s) for t, s in zip(shares, streams) if t > 0]
    if config.workers == 1:
        parts = [_run_stream(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_run_stream, *zip(*jobs)))
    result = EmpiricalCounts(config.n, {}, 0, 0)
    for part in parts:
        result = result.merge(part)
    result.counts = dict(sorted(result.counts.items()))
    for k in result.counts:
        if k % 2 != config.n % 2 or not 0 <= k <= config.n:
            raise AssertionError(f"invalid real-eigenvalue count {k} for n={config.n}")
    if result.failures > 1e-6 * config.trials:
        raise EigenSolverError(
            f"{result.failures} of {config.trials} trials failed to converge"
        )
    return result


def _pooled_chi2(observed: list[int], expected: list[float]) -> tuple[float, int]:
    """Chi-square statistic after merging sparse bins (expected < 5) into neighbours."""
    obs = list(observed)
    exp = list(expected)
    while len(exp) > 1 and min(exp) < 5.0:
        i = int(np.argmin(exp))
        j = i - 1 if i == len(exp) - 1 else i + 1
        if 0 < i < len(exp) - 1 and exp[i - 1] < exp[i + 1]:
            j = i - 1
        o, e = obs.pop(i), exp.pop(i)
        j -= j > i
        obs[j] += o
        exp[j] += e
    stat = sum((o - e) ** 2 / e for o, e in zip(obs, exp))
    return stat, len(exp) - 1


@dataclass
class Comparison:
    """Empirical counts set against the exact probabilities."""

    counts: EmpiricalCounts
    seed: int
    workers: int
    exact: dict[int, float]
    z_scores: dict[int, float]
    chi2: float
    chi2_dof: int
    chi2_pvalue: float
    mean: float
    exact_mean: float
    mean_z: float
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        c = self.counts
        ks = sorted(self.exact)
        freq = c.frequencies
        return {
            "n": c.n,
            "trials": c.total,
            "seed": self.seed,
            "workers": self.workers,
            "failures": c.failures,
            "counts": {str(k): c.counts.get(k, 0) for k in ks},
            "frequencies": {str(k): freq.get(k, 0.0) for k in ks},
            "exact": {str(k): self.exact[k] for k in ks},
            "z_scores": {str(k): self.z_scores[k] for k in ks},
            "chi2": self.chi2,
            "chi2_dof": self.chi2_dof,
            "chi2_pvalue": self.chi2_pvalue,
            "mean": self.mean,
            "exact_mean": self.exact_mean,
            "mean_z": self.mean_z,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self) -> str:
        d = self.as_dict()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "count", "frequency", "exact", "z_score"])
        for k in d["counts"]:
            w.writerow(
                [d["n"], k, d["counts"][k], repr(d["frequencies"][k]),
                 repr(d["exact"][k]), repr(d["z_scores"][k])]
            )
        return buf.getvalue()


def compare_with_exact(counts: EmpiricalCounts, seed: int = 0, workers: int = 1) -> Comparison:
    """Binomial z-scores per ``k``, a pooled chi-square test and a mean check."""
    from .probabilities import probability_table

    table = probability_table(counts.n)
    exact = {r.k: float(r.exact) for r in table.rows}
    N = counts.total - counts.failures
    z = {}
    for k, p in exact.items():
        sd = math.sqrt(N * p * (1 - p))
        dev = counts.counts.get(k, 0) - N * p
        z[k] = dev / sd if sd > 0 else (0.0 if dev == 0 else math.copysign(math.inf, dev))
    ks = sorted(exact)
    chi2, dof = _pooled_chi2([counts.counts.get(k, 0) for k in ks], [N * exact[k] for k in ks])
    pvalue = float(stats.chi2.sf(chi2, dof)) if dof > 0 else 1.0
    mean = sum(k * c for k, c in counts.counts.items()) / N
    exact_mean = sum(k * p for k, p in exact.items())
    var = sum(k * k * p for k, p in exact.items()) - exact_mean**2
    mean_z = (mean - exact_mean) / math.sqrt(var / N) if var > 0 else 0.0
    return Comparison(counts, seed, workers, exact, z, chi2, dof, pvalue, mean, exact_mean, mean_z)
