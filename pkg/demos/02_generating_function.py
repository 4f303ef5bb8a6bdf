"""
Two exact routes and the expected number of real eigenvalues
============================================================

The probabilities are the coefficients of p(n,n) * det(1 + z rho). The
determinant route and the power-sum route share nothing but rho, so their
agreement is a strong check.
"""

import math

from ginibre import expected_real_count, generating_function, probability_table
from ginibre.numberfield import ONE

for n in (5, 10, 17, 24):
    gf = generating_function(n)
    same = list(gf.coefficients) == [r.exact for r in probability_table(n).rows]
    print(f"n = {n:2d}: routes agree: {same}, G(1) == 1: {gf(ONE) == ONE}")

# E_n from the table against the hypergeometric closed form
for n in (1, 2, 3, 12, 24):
    exact, formula = expected_real_count(n)
    print(f"E_{n} = {exact}  ~ {float(exact):.12f}   closed form {formula:.12f}")

# E_n grows like sqrt(2 n / pi)
for n in (6, 12, 24):
    print(n, float(expected_real_count(n)[0]) / math.sqrt(2 * n / math.pi))
