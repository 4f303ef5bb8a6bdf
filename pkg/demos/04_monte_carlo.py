"""
Sampling real Gaussian matrices
===============================

Count real eigenvalues from the real Schur form of random matrices and
compare the frequencies with the exact table. Pass a trial count on the
command line; the default is quick.
"""

import sys

from ginibre import TrialConfig, estimate
from ginibre.montecarlo import compare_with_exact

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000

for n in (3, 6, 12):
    counts = estimate(TrialConfig(n, trials, seed=2005))
    report = compare_with_exact(counts, seed=2005)
    print(f"n = {n}, {trials} trials, chi2 p-value {report.chi2_pvalue:.3f}")
    for k in sorted(report.exact):
        f = counts.frequencies.get(k, 0.0)
        print(f"   k = {k:2d}  sampled {f:.6f}  exact {report.exact[k]:.6f}  z {report.z_scores[k]:+.2f}")
