"""
Graded closure checks for the supermatrices built out of a matrix doublet.

The even generators are block-diagonal pairs diag(J_i, Jbar_i); the odd ones
carry the doublet off-diagonally,

    Q_a = [[0, c * eps_{ab} g^b], [-c * gd_a, 0]],   eps = i sigma_2^T.

Closure of the odd-odd bracket onto the even triple fixes both the scale c
and the meaning of the lowered two-index sigma symbol; ``calibrate`` finds
that pair by direct search instead of trusting any printed normalization.
"""

from dataclasses import dataclass

import numpy as np

from .matcore import anticommutator, commutator, frobenius_norm
from .su2rep import EPS3, PAULI, bilinears

__all__ = [
    "EPS_LOWER",
    "SuperMatrixSet",
    "build",
    "osp_closure_residual",
    "CalibrationResult",
    "calibrate",
]

# antisymmetric doublet metric: i * sigma_2^T = [[0, -1], [1, 0]]
EPS_LOWER = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)

CONVENTIONS = ("eps_left", "eps_right")


@dataclass(frozen=True)
class SuperMatrixSet:
    even: tuple  # three (2N)x(2N) block-diagonal matrices
    odd: tuple  # two (2N)x(2N) block-off-diagonal matrices
    scale: float


def build(sol, scale=1.0):
    n = sol.size
    b = bilinears(sol)
    z = np.zeros((n, n), dtype=complex)
    even = tuple(
        np.block([[b.j[i], z], [z, b.jbar_i[i]]]) for i in range(3)
    )
    g = sol.matrices
    gd = sol.daggers
    odd = []
    for a in range(2):
        ga = sum(EPS_LOWER[a, c] * g[c] for c in range(2))
        odd.append(np.block([[z, scale * ga], [-scale * gd[a], z]]))
    return SuperMatrixSet(even=even, odd=tuple(odd), scale=float(scale))


def _sigma_lowered(i, convention):
    if convention == "eps_left":
        return EPS_LOWER @ PAULI[i].T
    if convention == "eps_right":
        return PAULI[i].T @ EPS_LOWER
    raise ValueError(f"unknown convention {convention!r}")


def osp_closure_residual(sms, convention="eps_left"):
    """(even-even, even-odd, odd-odd) residuals of the graded relations.

    even-even:  [E_i, E_j] = 2i eps_ijk E_k
    even-odd:   [E_i, Q_a] = -sigma_i[a, d] Q_d
    odd-odd:    {Q_a, Q_b} = -(sigma_i)_{ab} E_i, with the lowered symbol
                read per ``convention``.
    """
    e = sms.even
    q = sms.odd
    ee = 0.0
    for i in range(3):
        for j in range(3):
            rhs = sum(2j * EPS3[i, j, k] * e[k] for k in range(3))
            ee = max(ee, frobenius_norm(commutator(e[i], e[j]) - rhs))
    eo = 0.0
    for i in range(3):
        for a in range(2):
            rhs = -sum(PAULI[i][a, d] * q[d] for d in range(2))
            eo = max(eo, frobenius_norm(commutator(e[i], q[a]) - rhs))
    oo = 0.0
    for a in range(2):
        for b in range(2):
            low = [_sigma_lowered(i, convention) for i in range(3)]
            rhs = -sum(low[i][a, b] * e[i] for i in range(3))
            oo = max(oo, frobenius_norm(anticommutator(q[a], q[b]) - rhs))
    return ee, eo, oo


@dataclass(frozen=True)
class CalibrationResult:
    scale: float
    convention: str
    residuals: tuple  # (ee, eo, oo) at the optimum

    @property
    def total(self):
        return max(self.residuals)

    def to_json(self):
        return {
            "schema": 1,
            "scale": self.scale,
            "convention": self.convention,
            "residuals": list(self.residuals),
        }


def calibrate(sol, scales=None, tol=1e-10):
    """Search a scale grid and both sigma conventions for graded closure.

    Returns the minimizing pair and asserts the optimum actually closes;
    failure to close signals inconsistent conventions elsewhere, not bad
    input, hence the hard error.
    """
    if not sol.is_irreducible() or sol.size < 2:
        raise ValueError("calibration expects one irreducible block of size >= 2")
    n = sol.size
    if scales is None:
        scales = sorted(
            {0.25, 0.5, 1 / np.sqrt(2), 1.0, np.sqrt(2), 2.0, np.sqrt(n), 1 / np.sqrt(n)}
        )
    best = None
    for convention in CONVENTIONS:
        for c in scales:
            sms = build(sol, scale=c)
            res = osp_closure_residual(sms, convention)
            if best is None or max(res) < best.total:
                best = CalibrationResult(
                    scale=float(c), convention=convention, residuals=tuple(res)
                )
    if best.total > tol:
        raise ArithmeticError(
            f"no (scale, convention) pair closes the superalgebra "
            f"(best {best.total:.3e}); conventions bug"
        )
    return best
