"""Quadratic bilinears of the doublet close two spin algebras.

g^a gd_b contracted with transposed Pauli matrices gives generators J_i of
size N; gd_a g^b gives a second triple Jbar_i that lives on the (N-1)-block
and annihilates the first basis vector.  The doublet transforms as a spin
half multiplet between the two.
"""

import numpy as np

from fuzzball import (
    bilinears,
    doublet_covariance_residual,
    ground_state,
    intertwiner_residual,
    irrep,
    u2_structure_residual,
)
from fuzzball.su2rep import casimir, su2_closure_residual, Su2Representation

np.set_printoptions(precision=4, suppress=True, linewidth=100)

n = 4
b = bilinears(ground_state(n))
print("J3 =", np.diag(b.j[2]).real)
print("Jbar3 =", np.diag(b.jbar_i[2]).real)
print("closure J:", su2_closure_residual(b.j))
print("closure Jbar:", su2_closure_residual(b.jbar_i))
print("u(2) structure:", u2_structure_residual(b))

# the u(1) traces: (N-1) on the unbarred side, N (1 - E_11) on the barred
print("trace J =", np.diag(b.trace_j).real)
print("trace Jbar =", np.diag(b.trace_jbar).real)

# Casimir reproduces the irreducible value N^2 - 1
rep = Su2Representation(*b.j, partition=(n,))
print("casimir:", np.diag(casimir(rep)).real, "(expect", n * n - 1, ")")

# the extracted generators coincide with the ladder-built ones entrywise
ref = irrep(n)
print("matches ladder irrep:", max(np.linalg.norm(a - c) for a, c in zip(b.j, ref.generators)))

# doublet transformation laws and the two intertwining relations
sol = ground_state(7)
print("doublet covariance:", doublet_covariance_residual(sol))
print("intertwiners (factors N+1 and N-2):", intertwiner_residual(sol))
