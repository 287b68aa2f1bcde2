"""Quaternionic and octonionic Hopf maps with their Clifford scaffolding.

The same spinor-bilinear pattern sends C^4 onto the four-sphere through
SO(5) gammas and R^16 onto the eight-sphere through SO(9) gammas built on
octonion left-multiplications; the eight-sphere map inverts explicitly.
"""

import numpy as np

from fuzzball.geometry import gamma_so5, gamma_so9, hopf_s4, hopf_s8, octonion_lambdas, s8_inversion

rng = np.random.default_rng(0)

g5 = gamma_so5()
worst = max(
    np.max(np.abs(a @ b + b @ a - 2.0 * (i == j) * np.eye(4)))
    for i, a in enumerate(g5)
    for j, b in enumerate(g5)
)
print("SO(5) Clifford defect:", worst)
print("Gamma_A Gamma_A =", np.diag(sum(g @ g for g in g5)).real)

lams = octonion_lambdas()
print("lambda_i antisymmetric:", max(np.max(np.abs(l + l.T)) for l in lams))
worst = max(
    np.max(np.abs(a @ b + b @ a + 2.0 * (i == j) * np.eye(8)))
    for i, a in enumerate(lams)
    for j, b in enumerate(lams)
)
print("octonion Clifford defect:", worst)

g9 = gamma_so9()
worst = max(
    np.max(np.abs(a @ b + b @ a - 2.0 * (i == j) * np.eye(16)))
    for i, a in enumerate(g9)
    for j, b in enumerate(g9)
)
print("SO(9) Clifford defect:", worst)

z = rng.normal(size=4) + 1j * rng.normal(size=4)
z /= np.linalg.norm(z)
x = hopf_s4(z)
print("S4 image norm:", np.linalg.norm(x), " phase-fibre invariance:",
      np.max(np.abs(hopf_s4(np.exp(0.9j) * z) - x)))

x9 = rng.normal(size=9)
x9 /= np.linalg.norm(x9)
u8 = rng.normal(size=8)
u8 /= np.linalg.norm(u8)
g = s8_inversion(x9, u8)
print("S8 inversion lands on the fifteen-sphere:", np.linalg.norm(g))
print("S8 round trip error:", np.max(np.abs(hopf_s8(g) - x9)))
