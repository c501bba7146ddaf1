"""Exact expected lifetime sums from Tutte polynomials.

Walks through the 2-skeleta of the simplex on 4, 5 and 6 vertices: the
higher Tutte polynomial, the expected Betti curve, and its integral.
"""

from fractions import Fraction

from acyclica import simplicial_skeleton, spanning_acycle_count, tutte_polynomial
from acyclica.tutte import expected_betti_polynomial, expected_lifetime_exact

# the 2-skeleton of a tetrahedron: 4 vertices, 6 edges, 4 triangles
X = simplicial_skeleton(4, 2)
print(X)
print("T =", tutte_polynomial(X, 2))

# T(1, 1) counts the spanning acycles: any 3 of the 4 triangles
print("spanning acycles:", spanning_acycle_count(X, 2))

# expected reduced beta_1 of the Bernoulli complex with parameter t, as a polynomial in t
curve = expected_betti_polynomial(X, 2)
print("E[beta_1(t)] =", curve)
print("integral =", curve.integrate())

for n in (4, 5, 6):
    value = expected_lifetime_exact(simplicial_skeleton(n, 2), 2)
    print(f"n={n}: E[L] = {value} = {float(value):.5f}")

# the same number evaluated at a point of the Tutte plane
t = Fraction(1, 3)
T = tutte_polynomial(simplicial_skeleton(5, 2), 2)
print("T(1/t, 1/(1-t)) at t=1/3:", T(1 / t, 1 / (1 - t)))
