"""Matrix spherical harmonics and the mode content of fluctuations.

Every N x N matrix expands in N^2 harmonics Y_lm built from the spin
generators; barred-side matrices need two families of edge modes on top of
the (N-1)-block harmonics; doublet fluctuations split into a trace mode, a
traceless doublet mode and an edge part carried by the first column.
"""

import numpy as np

from fuzzball import (
    build_basis,
    decompose_adjoint,
    decompose_bifundamental,
    decompose_ubar,
    ground_state,
    irrep,
)
from fuzzball.matcore import commutator, frobenius_norm

np.set_printoptions(precision=4, suppress=True)

n = 4
rep = irrep(n)
basis = build_basis(rep)
print("basis size:", len(basis.keys()), "(expect", n * n, ")")

# each Y_lm is an eigenvector of ad(J3) and of the adjoint Laplacian
for (l, m) in ((1, 0), (2, 2), (3, -1)):
    y = basis[(l, m)]
    lap = sum(commutator(g, commutator(g, y)) for g in rep.generators)
    print(f"Y_{l}{m:+d}: ad(J3) weight {2*m:+d}, Laplacian {np.trace(y.conj().T @ lap).real / n:.4f}"
          f" (expect {4*l*(l+1)})")

rng = np.random.default_rng(1)
a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
coeffs = decompose_adjoint(a, basis)
power = sum(abs(c) ** 2 for c in coeffs.values())
print("adjoint decomposition preserves norm:", n * power, "vs", frobenius_norm(a) ** 2)

# barred-side expansion: block harmonics plus edge modes
sol = ground_state(n)
modes = decompose_ubar(a, sol)
print("ubar coefficient count:", 1 + len(modes.a_lm) + modes.b.size + modes.bbar.size)

# a doublet fluctuation equal to the background itself is pure trace
m = decompose_bifundamental(sol.g1, sol.g2, sol, basis=basis)
print("identity fluctuation: r_00 =", m.r_coeffs[(0, 0)], " |s| =",
      max(np.max(np.abs(s)) for s in m.s_coeffs.values()),
      " |t| =", np.max(np.abs(m.t_coeffs)))

# a random fluctuation reconstructs exactly; the edge part is column one
r1 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
r2 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
m = decompose_bifundamental(r1, r2, sol, basis=basis)
print("random fluctuation reconstruction residual:", m.residual)
print("edge amplitudes t^1 =", np.round(m.t_coeffs[0], 3))
