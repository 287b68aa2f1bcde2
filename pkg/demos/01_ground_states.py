"""Build ground-state doublets and check the identities they satisfy.

The doublet (g1, g2) solves the cubic equation
    g^a = g^a gd_b g^b - g^b gd_b g^a   (b summed),
squares to the sphere constraint g^a gd_a = (N-1) 1, and keeps doing so
under gauge dressing by a pair of unitaries.
"""

import numpy as np

from fuzzball import (
    block_solution,
    gauge_dress,
    ground_state,
    grvv_residual,
    real_coordinates,
    sphere_constraints,
)
from fuzzball.matcore import random_unitary

np.set_printoptions(precision=4, suppress=True, linewidth=100)

sol = ground_state(3)
print("g1 =\n", sol.g1.real)
print("g2 =\n", sol.g2.real)
print("cubic residual:", grvv_residual(sol))
print("sphere constraints:", sphere_constraints(sol))

# the first Hermitian coordinate pair: x2 vanishes identically, which is
# what cuts the would-be three-sphere down to a two-sphere
x1, x2, x3, x4 = real_coordinates(sol)
print("||x2|| =", np.linalg.norm(x2))

# reducible solutions are direct sums, and the residual stays at rounding
blocks = block_solution([2, 3, 4])
print("block solution [2,3,4], residual:", grvv_residual(blocks))

# gauge dressing hides the blocks but not the algebra
rng = np.random.default_rng(0)
dressed = gauge_dress(blocks, random_unitary(9, rng), random_unitary(9, rng))
print("dressed residual:", grvv_residual(dressed))
print("dressed g1 is no longer Hermitian:", np.linalg.norm(dressed.g1 - dressed.g1.conj().T) > 0.1)

for n in (2, 4, 8, 16, 32, 64, 128, 256):
    print(f"n={n:4d}  residual={grvv_residual(ground_state(n)):.3e}")
