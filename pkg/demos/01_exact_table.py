"""
Exact probabilities of k real eigenvalues
=========================================

Every probability lives in Q[sqrt2]: a rational part plus a rational
multiple of sqrt2. Here we build the full table for 12 x 12 matrices.
"""

from ginibre import probability_table, rho_matrix

# rho for n = 12 is a 6 x 6 matrix; its entries are exact
rho = rho_matrix(12)
print("rho[0, 0] =", rho[0, 0])
print("rho[1, 0] =", rho[1, 0])

table = probability_table(12)
for row in table.rows:
    print(f"k = {row.k:2d}   {row.decimal}   {row.exact}")

# the sectors are exhaustive, so the probabilities sum to exactly one
print("sum =", table.total())

# odd dimensions use the odd flavor of rho; k is then odd
print(probability_table(7).to_csv())
