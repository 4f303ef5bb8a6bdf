"""Exact and numerical statistics of real eigenvalues of real Ginibre matrices."""

from .kernel import projection_failure_demo, skew_orthogonal_basis, theorem_check_ell1
from .montecarlo import TrialConfig, count_real_eigenvalues, estimate
from .numberfield import QSqrt2
from .partitions import elementary_from_powersums, enumerate_partitions, zonal_F
from .probabilities import (
    expected_real_count,
    generating_function,
    p_all_real,
    probability_table,
)
from .rho import moment_I, rho_even, rho_matrix, rho_odd

__version__ = "0.1.0"
