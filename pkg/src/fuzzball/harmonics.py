"""
Matrix spherical harmonics for an irreducible spin representation, mode
decompositions of adjoint and bifundamental matrices, and pointwise classical
Y_lm evaluation used by the large-size comparisons.

Basis construction: the top element of each ladder is

    Y_ll  =  (-1)^l (J_+)^l * (positive normalization),

lowered repeatedly by ad(J_-)/(2 alpha_{l,m}) and held at Tr(Y^dag Y) = N.
The (-1)^l prefix keeps the coherent-state symbol of every element aligned
with the Condon-Shortley phases of the classical Y_lm.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import lpmv

from .matcore import commutator, dagger, frobenius_norm
from .su2rep import Su2Representation, irrep

__all__ = [
    "HarmonicBasis",
    "build_basis",
    "decompose_adjoint",
    "reconstruct_adjoint",
    "UbarModes",
    "decompose_ubar",
    "reconstruct_ubar",
    "BifundamentalModes",
    "decompose_bifundamental",
    "reconstruct_bifundamental",
    "classical_ylm",
    "classical_ylm_dtheta",
]


@dataclass(frozen=True)
class HarmonicBasis:
    """Family {Y_lm} for one irreducible block, Tr(Y_lm^dag Y_l'm') = N d d."""

    rep: Su2Representation
    elements: dict  # (l, m) -> matrix

    @property
    def dim(self):
        return self.rep.dim

    def keys(self):
        return sorted(self.elements.keys())

    def __getitem__(self, key):
        return self.elements[key]


def build_basis(rep):
    if not rep.is_irreducible():
        raise ValueError("harmonic basis is defined per irreducible block")
    n = rep.dim
    jp = rep.j1 + 1j * rep.j2
    jm = rep.j1 - 1j * rep.j2
    elements = {}
    for l in range(n):
        top = (-1) ** l * np.linalg.matrix_power(jp, l)
        top = top * (math.sqrt(n) / frobenius_norm(top))
        elements[(l, l)] = top
        # lower only down to m = 0; negative m comes from the exact
        # conjugation symmetry, which halves the ladder length
        for m in range(l, 0, -1):
            alpha = math.sqrt((l + m) * (l - m + 1))
            elements[(l, m - 1)] = commutator(jm, elements[(l, m)]) / (2 * alpha)
        for m in range(1, l + 1):
            elements[(l, -m)] = (-1) ** m * dagger(elements[(l, m)])
    # long ladders leave ~1e-13 cross-l contamination within an m sector,
    # which the widely spread Laplacian eigenvalues would amplify; one
    # Gram-Schmidt sweep in increasing l removes it
    for m in range(-(n - 1), n):
        ls = [l for l in range(abs(m), n)]
        for i, l in enumerate(ls):
            y = elements[(l, m)]
            for lprev in ls[:i]:
                z = elements[(lprev, m)]
                y = y - (np.trace(dagger(z) @ y) / n) * z
            elements[(l, m)] = y * (math.sqrt(n) / frobenius_norm(y))
    return HarmonicBasis(rep=rep, elements=elements)


def decompose_adjoint(a, basis):
    """Coefficients a_lm = Tr(Y_lm^dag A) / N of a square matrix A."""
    a = np.asarray(a, dtype=complex)
    n = basis.dim
    if a.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {a.shape}")
    return {
        key: complex(np.trace(dagger(y) @ a)) / n for key, y in basis.elements.items()
    }


def reconstruct_adjoint(coeffs, basis):
    n = basis.dim
    out = np.zeros((n, n), dtype=complex)
    for key, c in coeffs.items():
        out += c * basis.elements[key]
    return out


@dataclass(frozen=True)
class UbarModes:
    """Expansion of a barred-side square matrix.

    a0 multiplies E_11, a_lm the harmonics of the (N-1)-block, and the edge
    coefficients b[k], bbar[k] (k = 2..N, stored from index 0) multiply
    E_1k and E_k1 respectively.
    """

    a0: complex
    a_lm: dict
    b: np.ndarray
    bbar: np.ndarray


def _embedded_bar_basis(n):
    """Harmonics of the (N-1)-dimensional block embedded at rows/cols 2..N."""
    if n < 2:
        return {}
    sub = build_basis(irrep(n - 1))
    out = {}
    for key, y in sub.elements.items():
        big = np.zeros((n, n), dtype=complex)
        big[1:, 1:] = y
        out[key] = big
    return out


def decompose_ubar(abar, sol):
    """Split a barred-side matrix into E_11, block harmonics and edge modes."""
    if not sol.is_irreducible():
        raise ValueError("barred-side expansion is defined per irreducible block")
    n = sol.size
    abar = np.asarray(abar, dtype=complex)
    if abar.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {abar.shape}")
    a0 = complex(abar[0, 0])
    b = abar[0, 1:].copy()
    bbar = abar[1:, 0].copy()
    a_lm = {}
    if n >= 2:
        inner = abar[1:, 1:]
        sub = build_basis(irrep(n - 1))
        a_lm = decompose_adjoint(inner, sub)
    return UbarModes(a0=a0, a_lm=a_lm, b=b, bbar=bbar)


def reconstruct_ubar(modes, n):
    out = np.zeros((n, n), dtype=complex)
    out[0, 0] = modes.a0
    out[0, 1:] = modes.b
    out[1:, 0] = modes.bbar
    if n >= 2 and modes.a_lm:
        sub = build_basis(irrep(n - 1))
        out[1:, 1:] += reconstruct_adjoint(modes.a_lm, sub)
    return out


@dataclass(frozen=True)
class BifundamentalModes:
    """Modes (r, s, t) of a doublet fluctuation r^a = r g^a + s^a_b g^b + T^a.

    r_coeffs[(l, m)] is the shared trace mode, s_coeffs[(l, m)] a traceless
    2x2 array, t_coeffs[a, k] the edge amplitudes on E_{k+1,1}, and residual
    the reconstruction error (which should be zero: the modes span).
    """

    r_coeffs: dict
    s_coeffs: dict
    t_coeffs: np.ndarray
    residual: float


def _mode_matrices(basis):
    """Harmonics with l <= N-2, the range entering the bifundamental fit."""
    keys = [(l, m) for l in range(basis.dim - 1) for m in range(-l, l + 1)]
    ymats = {key: basis.elements[key] for key in keys}
    return keys, ymats


def decompose_bifundamental(r1, r2, sol, basis=None):
    """Fit (r, s, t) to a doublet with the trace mode extracted first.

    The spanning family {Y_lm g^b} is overcomplete for N >= 3, so a gauge
    choice is needed.  The edge part is read off column 1 exactly; the
    shared trace coefficient is the least-squares fit of both rows at once;
    the traceless part then absorbs the remainder (minimum-norm).  This
    makes a pure fluctuation r^a = g^a come out as r = Y_00 exactly.
    """
    if not sol.is_irreducible():
        raise ValueError("mode expansion is defined per irreducible block")
    n = sol.size
    if basis is None:
        from .su2rep import bilinears, su2_from_bilinears

        basis = build_basis(su2_from_bilinears(bilinears(sol), partition=(n,)))
    r = [np.asarray(r1, dtype=complex), np.asarray(r2, dtype=complex)]
    for m in r:
        if m.shape != (n, n):
            raise ValueError(f"expected {n}x{n} fluctuation matrices")
    g = sol.matrices

    # edge part: g^b kills the first barred basis vector, so column 1 of the
    # fluctuation is carried by the E_{k1} modes alone
    t = np.stack([r[0][:, 0].copy(), r[1][:, 0].copy()])
    rem = [m.copy() for m in r]
    rem[0][:, 0] = 0.0
    rem[1][:, 0] = 0.0

    keys, ymats = _mode_matrices(basis)
    nk = len(keys)

    # shared trace fit over both rows
    cols = [
        np.concatenate([(ymats[k] @ g[0]).reshape(-1), (ymats[k] @ g[1]).reshape(-1)])
        for k in keys
    ]
    amat = np.array(cols).T
    rhs = np.concatenate([rem[0].reshape(-1), rem[1].reshape(-1)])
    rvec, *_ = np.linalg.lstsq(amat, rhs, rcond=None)
    r_coeffs = dict(zip(keys, rvec))

    # traceless remainder, row by row (rows do not couple)
    for a in range(2):
        rem[a] = rem[a] - sum(rvec[i] * (ymats[keys[i]] @ g[a]) for i in range(nk))
    s_rows = []
    for a in range(2):
        cols = [(ymats[k] @ g[b]).reshape(-1) for k in keys for b in range(2)]
        amat = np.array(cols).T
        svec, *_ = np.linalg.lstsq(amat, rem[a].reshape(-1), rcond=None)
        s_rows.append(svec.reshape(nk, 2))
    s_full = {
        keys[i]: np.array(
            [[s_rows[0][i, 0], s_rows[0][i, 1]], [s_rows[1][i, 0], s_rows[1][i, 1]]]
        )
        for i in range(nk)
    }
    # enforce tracelessness by shifting any residual trace into r
    s_coeffs = {}
    for key, mat in s_full.items():
        tr = (mat[0, 0] + mat[1, 1]) / 2
        r_coeffs[key] = r_coeffs[key] + tr
        s_coeffs[key] = mat - tr * np.eye(2)

    modes = BifundamentalModes(
        r_coeffs=r_coeffs, s_coeffs=s_coeffs, t_coeffs=t, residual=0.0
    )
    rec = reconstruct_bifundamental(modes, sol, basis)
    residual = max(frobenius_norm(rec[a] - r[a]) for a in range(2))
    modes = BifundamentalModes(
        r_coeffs=r_coeffs, s_coeffs=s_coeffs, t_coeffs=t, residual=residual
    )
    if residual > 1e-8 * max(1.0, max(frobenius_norm(m) for m in r)):
        raise ArithmeticError(
            f"mode reconstruction residual {residual:.3e}; the spanning set is "
            "complete, so this indicates a bug"
        )
    return modes


def reconstruct_bifundamental(modes, sol, basis=None):
    n = sol.size
    if basis is None:
        from .su2rep import bilinears, su2_from_bilinears

        basis = build_basis(su2_from_bilinears(bilinears(sol), partition=(n,)))
    g = sol.matrices
    out = [np.zeros((n, n), dtype=complex) for _ in range(2)]
    for key, c in modes.r_coeffs.items():
        y = basis.elements[key]
        for a in range(2):
            out[a] += c * (y @ g[a])
    for key, s in modes.s_coeffs.items():
        y = basis.elements[key]
        for a in range(2):
            for b in range(2):
                out[a] += s[a, b] * (y @ g[b])
    for a in range(2):
        out[a][:, 0] += modes.t_coeffs[a]
    return out


def classical_ylm(l, m, theta, phi):
    """Y_lm(theta, phi) normalized to unit mean square over the sphere.

    Condon-Shortley phases; Y_00 = 1, Y_10 = sqrt(3) cos(theta).
    """
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ma = abs(m)
    norm = math.sqrt((2 * l + 1) * math.factorial(l - ma) / math.factorial(l + ma))
    val = norm * lpmv(ma, l, np.cos(theta)) * np.exp(1j * ma * phi)
    if m < 0:
        val = (-1) ** ma * np.conj(val)
    return val


def classical_ylm_dtheta(l, m, theta, phi):
    """d/dtheta of classical_ylm via the ladder identity

    dY_lm/dtheta = m cot(theta) Y_lm + sqrt((l-m)(l+m+1)) e^{-i phi} Y_{l,m+1}.
    """
    out = m / np.tan(theta) * classical_ylm(l, m, theta, phi)
    if m < l:
        out = out + math.sqrt((l - m) * (l + m + 1)) * np.exp(
            -1j * np.asarray(phi)
        ) * classical_ylm(l, m + 1, theta, phi)
    return out
