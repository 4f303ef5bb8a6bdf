"""
The skew-orthogonal kernel under quadrature
===========================================

With one complex-conjugate pair the Pfaffian collapses to K_n(z, conj z).
Integrating it over the upper half-plane reproduces tr rho, and the same
measure shows that K_n is *not* a reproducing kernel.
"""

import numpy as np

from ginibre import projection_failure_demo, skew_orthogonal_basis, theorem_check_ell1
from ginibre.kernel import kernel_eval

ctx = skew_orthogonal_basis(4)
print("mu for n = 4:\n", np.round(ctx.mu, 6))
z = 0.3 + 1.2j
print("K_4(z, conj z) =", kernel_eval(ctx, z, np.conj(z)))

for n in range(2, 9):
    res = theorem_check_ell1(n)
    print(f"n = {n}: quadrature {res.lhs:.12f}  exact {res.rhs:.12f}  rel err {res.rel_err:.1e}")

for n in (2, 4, 6):
    demo = projection_failure_demo(n)
    print(f"n = {n}: integral {demo.lhs:.6f}  half kernel {demo.rhs:.6f}  gap {demo.gap:.4g}")
