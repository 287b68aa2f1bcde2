"""
Spectral bridges between the matrix and classical pictures: the adjoint
Laplacian, the three-component fluctuation kinetic operator, classical
vector/spinor harmonics, the Dirac-square identity, and coherent-state
symbol maps with their convergence sweeps.
"""

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import build_basis, classical_ylm, classical_ylm_dtheta
from .matcore import spectral_norm
from .su2rep import irrep

__all__ = [
    "adjoint_laplacian_matrix",
    "fuzzy_laplacian_spectrum",
    "commutator_decay",
    "scalar_kinetic_matrix",
    "scalar_kinetic_spectrum",
    "KineticSpectrum",
    "vector_harmonics",
    "spherical_spinor",
    "spinorial_harmonic",
    "dirac_square_check",
    "DiracSquareResult",
    "coherent_state",
    "symbol_map",
    "mode_convergence",
]

MAX_LAPLACIAN_SIZE = 64
MAX_KINETIC_SIZE = 16


def _ad(j, n):
    """ad(J) as an n^2 x n^2 matrix on row-major vectorized matrices."""
    eye = np.eye(n)
    return np.kron(j, eye) - np.kron(eye, j.T)


def adjoint_laplacian_matrix(rep):
    n = rep.dim
    return sum(_ad(g, n) @ _ad(g, n) for g in rep.generators)


def fuzzy_laplacian_spectrum(rep):
    """Eigenvalues of A -> sum_i [J_i, [J_i, A]]: 4 l (l+1), each 2l+1 times."""
    if not rep.is_irreducible():
        raise ValueError("spectrum is stated per irreducible block")
    if rep.dim > MAX_LAPLACIAN_SIZE:
        raise ValueError(f"dense diagonalization capped at size {MAX_LAPLACIAN_SIZE}")
    lap = adjoint_laplacian_matrix(rep)
    return np.sort(np.linalg.eigvalsh((lap + lap.conj().T) / 2).real)


def commutator_decay(n_list):
    """[(n, spectral norm of [x1, x2])] for x_i = J_i / sqrt(n^2 - 1).

    The exact value is 2/(n+1); the table is computed from the raw operator
    norm so the closed form can be checked against it.
    """
    out = []
    for n in n_list:
        if n == 1:
            out.append((1, 0.0))
            continue
        rep = irrep(n)
        x1 = rep.j1 / math.sqrt(n**2 - 1)
        x2 = rep.j2 / math.sqrt(n**2 - 1)
        out.append((int(n), spectral_norm(x1 @ x2 - x2 @ x1)))
    return out


def scalar_kinetic_matrix(rep):
    """(1 + J^2) d_ij - i eps_ijk J_k on triples of matrices, J acting in the
    adjoint; Hermitian under the trace inner product."""
    n = rep.dim
    d = n * n
    ads = [_ad(g, n) for g in rep.generators]
    lap = sum(a @ a for a in ads)
    k = np.zeros((3 * d, 3 * d), dtype=complex)
    for i in range(3):
        k[i * d : (i + 1) * d, i * d : (i + 1) * d] = np.eye(d) + lap
    from .su2rep import EPS3

    for i in range(3):
        for j in range(3):
            for kk in range(3):
                if EPS3[i, j, kk]:
                    k[i * d : (i + 1) * d, j * d : (j + 1) * d] += (
                        -1j * EPS3[i, j, kk] * ads[kk]
                    )
    return k


@dataclass(frozen=True)
class KineticSpectrum:
    eigenvalues: np.ndarray  # sorted
    groups: tuple  # (eigenvalue, multiplicity, vector_mult, spinor_mult, family)
    ji_triple_eigenvalue: float  # eigenvalue carried by the (J_1, J_2, J_3) triple
    ji_triple_residual: float


def _vector_family(rep):
    """Orthonormal span of the triples (J_1 Y_lm, J_2 Y_lm, J_3 Y_lm)."""
    n = rep.dim
    basis = build_basis(rep)
    cols = []
    for key in basis.keys():
        y = basis.elements[key]
        cols.append(np.concatenate([(g @ y).reshape(-1) for g in rep.generators]))
    v = np.array(cols).T
    q, r = np.linalg.qr(v)
    keep = np.abs(np.diag(r)) > 1e-10 * np.abs(r).max()
    return q[:, keep]


def scalar_kinetic_spectrum(rep, action_mode="adjoint", group_tol=1e-8):
    """Dense spectrum of the fluctuation kinetic operator.

    ``action_mode`` records how the quadratic generator term acts; only the
    adjoint action is shipped (the term is the adjoint Casimir, not left
    multiplication).  Each degenerate eigenspace is split against the span
    of the triples (J_1 Y_lm, J_2 Y_lm, J_3 Y_lm): ``vector_mult`` counts
    directions lying fully inside that span, ``spinor_mult`` directions
    fully orthogonal to it; at finite size partial overlaps occur and are
    tagged mixed.  The triple (J_1, J_2, J_3) itself is an exact eigenvector
    at every size and is certified separately.
    """
    if action_mode != "adjoint":
        raise ValueError("only the adjoint action is implemented")
    if not rep.is_irreducible():
        raise ValueError("spectrum is stated per irreducible block")
    if rep.dim > MAX_KINETIC_SIZE:
        raise ValueError(f"dense diagonalization capped at size {MAX_KINETIC_SIZE}")
    k = scalar_kinetic_matrix(rep)
    k = (k + k.conj().T) / 2
    w, vecs = np.linalg.eigh(k)
    vfam = _vector_family(rep)
    groups = []
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and abs(w[j + 1] - w[i]) < group_tol * max(1.0, abs(w[i])):
            j += 1
        space = vecs[:, i : j + 1]
        sv = np.linalg.svd(vfam.conj().T @ space, compute_uv=False)
        mult = j - i + 1
        vec_mult = int(np.sum(sv > 1.0 - 1e-6))
        spinor_mult = mult - int(np.sum(sv > 1e-6))
        if vec_mult == mult:
            family = "vector"
        elif spinor_mult == mult:
            family = "spinor"
        else:
            family = "mixed"
        groups.append((float(w[i]), mult, vec_mult, spinor_mult, family))
        i = j + 1

    triple = np.concatenate([g.reshape(-1) for g in rep.generators])
    image = k @ triple
    nrm2 = float(np.real(triple.conj() @ triple))
    eig = float(np.real(triple.conj() @ image) / nrm2) if nrm2 > 0 else 1.0
    residual = (
        float(np.linalg.norm(image - eig * triple) / np.sqrt(nrm2)) if nrm2 > 0 else 0.0
    )
    return KineticSpectrum(
        eigenvalues=np.sort(w.real),
        groups=tuple(groups),
        ji_triple_eigenvalue=eig,
        ji_triple_residual=residual,
    )


def vector_harmonics(l, m, theta, phi):
    """Tangent pair (T_lm, S_lm) in orthonormal-frame components (theta, phi).

    T is the curl type, S the gradient type; both are unit-normalized under
    the mean-square inner product because the scalar harmonics are.
    """
    if l < 1:
        raise ValueError("vector harmonics need l >= 1")
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    norm = 1.0 / math.sqrt(l * (l + 1))
    dth = classical_ylm_dtheta(l, m, theta, phi)
    dph_frame = 1j * m * classical_ylm(l, m, theta, phi) / np.sin(theta)
    t = norm * np.stack([-dph_frame, dth], axis=-1)
    s = norm * np.stack([dth, dph_frame], axis=-1)
    return t, s


def _cg_half(j, l, m, mu):
    """Clebsch-Gordan <l, m - mu; 1/2, mu | j, m> for j = l +- 1/2."""
    two_j = int(round(2 * j))
    if two_j == 2 * l + 1:
        if mu > 0:
            return math.sqrt((l + m + 0.5) / (2 * l + 1))
        return math.sqrt((l - m + 0.5) / (2 * l + 1))
    if two_j == 2 * l - 1:
        if mu > 0:
            return -math.sqrt((l - m + 0.5) / (2 * l + 1))
        return math.sqrt((l + m + 0.5) / (2 * l + 1))
    raise ValueError("j must be l + 1/2 or l - 1/2")


def spherical_spinor(j, l, m, theta, phi):
    """Omega_{jlm}: the l x 1/2 coupling of scalar harmonics and constant
    spinors, with half-integral j and m."""
    if abs(round(2 * j) - 2 * j) > 1e-12 or abs(round(2 * m) - 2 * m) > 1e-12:
        raise ValueError("j and m must be half-integral")
    if abs(m) > j:
        raise ValueError("|m| must not exceed j")
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(np.broadcast(theta, np.asarray(phi)).shape + (2,), dtype=complex)
    for idx, mu in enumerate((0.5, -0.5)):
        ml = m - mu
        if abs(ml) > l:
            continue
        out[..., idx] = _cg_half(j, l, m, mu) * classical_ylm(
            l, int(round(ml)), theta, phi
        )
    return out


# ---------------------------------------------------------------------------
# Dirac square on the spinorial harmonics


def _eta_pair(theta, phi):
    from .geometry import killing_spinor

    return killing_spinor(theta, phi)


def _ylm_pack(l, m, theta, phi):
    """Y, dY/dtheta, d2Y/dtheta2 (the second from the defining ODE)."""
    y = classical_ylm(l, m, theta, phi)
    yt = classical_ylm_dtheta(l, m, theta, phi)
    cot = np.cos(theta) / np.sin(theta)
    ytt = -cot * yt - (l * (l + 1) - m * m / np.sin(theta) ** 2) * y
    return y, yt, ytt


def _xi_and_dirac(l, m, sign, theta, phi):
    """The spinorial harmonic and one analytic Dirac application.

    sign=+1 pairs Y_l with the chirality-flipped spinors, sign=-1 pairs
    Y_{l+1} with the plain ones; both families square to (l+1)^2.
    """
    from .su2rep import PAULI

    s1, s2, s3 = PAULI
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ly = l if sign > 0 else l + 1
    if abs(m) > ly:
        raise ValueError("|m| must not exceed the scalar degree")
    lam = l + 1
    y, yt, ytt = _ylm_pack(ly, m, theta, phi)
    sin = np.sin(theta)
    cos = np.cos(theta)

    eta = _eta_pair(theta, phi)[..., :, 0]  # one global component suffices
    base = np.einsum("ab,...b->...a", s3, eta) if sign > 0 else eta
    # d_a eta from the Killing equation (with its torsion-free phi term)
    deta_t = 0.5j * np.einsum("ab,...b->...a", s1, eta)
    deta_p = 0.5j * sin[..., None] * np.einsum(
        "ab,...b->...a", s2, eta
    ) + 0.5j * cos[..., None] * np.einsum("ab,...b->...a", s3, eta)
    dbase_t = np.einsum("ab,...b->...a", s3, deta_t) if sign > 0 else deta_t
    dbase_p = np.einsum("ab,...b->...a", s3, deta_p) if sign > 0 else deta_p

    def mmat(yv, ytv):
        out = lam * yv[..., None, None] * np.eye(2)
        out = out + 1j * ytv[..., None, None] * s1
        out = out + 1j * (1j * m * yv / sin)[..., None, None] * s2
        return out

    mm = mmat(y, yt)
    xi = np.einsum("...ab,...b->...a", mm, base)

    dm_t = lam * yt[..., None, None] * np.eye(2) + 1j * ytt[..., None, None] * s1
    dm_t = dm_t + 1j * (1j * m * (yt / sin - y * cos / sin**2))[..., None, None] * s2
    dxi_t = np.einsum("...ab,...b->...a", dm_t, base) + np.einsum(
        "...ab,...b->...a", mm, dbase_t
    )
    # every Y-factor in M carries exp(i m phi)
    dxi_p = 1j * m * xi + np.einsum("...ab,...b->...a", mm, dbase_p)

    dirac = -1j * (
        np.einsum("ab,...b->...a", s1, dxi_t)
        + np.einsum("ab,...b->...a", s2, dxi_p)
        / sin[..., None]
        - 0.5j
        * (cos / sin)[..., None]
        * np.einsum("ab,bc,...c->...a", s2, s3, xi)
    )
    return xi, dirac


def spinorial_harmonic(l, m, sign, theta, phi):
    """Killing-spinor-based spinor harmonics on the sphere.

    Built as [(l + 1) Y + i gamma^a (d_a Y)] acting on a Killing spinor;
    ``sign`` selects which chirality carries the construction (+1 pairs the
    flipped spinor with degree l, -1 the plain spinor with degree l + 1).
    The two writings produce proportional fields, which is the defining
    rewrite identity of the family, and either one squares to (l + 1)^2
    under the Dirac operator.  Returns values of shape (..., 2).
    """
    xi, _ = _xi_and_dirac(l, m, sign, theta, phi)
    return xi


def _dirac_fd(field, theta, phi, h):
    """One finite-difference Dirac application of a callable spinor field."""
    from .su2rep import PAULI

    s1, s2, s3 = PAULI
    sin = np.sin(theta)
    cos = np.cos(theta)
    f0 = field(theta, phi)
    ft = (field(theta + h, phi) - field(theta - h, phi)) / (2 * h)
    fp = (field(theta, phi + h) - field(theta, phi - h)) / (2 * h)
    return -1j * (
        np.einsum("ab,...b->...a", s1, ft)
        + np.einsum("ab,...b->...a", s2, fp) / sin[..., None]
        - 0.5j
        * (cos / sin)[..., None]
        * np.einsum("ab,bc,...c->...a", s2, s3, f0)
    )


@dataclass(frozen=True)
class DiracSquareResult:
    eigenvalue: float  # quadrature Rayleigh quotient
    target: float  # (l + 1)^2
    residual: float  # sup-norm defect relative to the field size

    @property
    def error(self):
        return abs(self.eigenvalue - self.target)


def dirac_square_check(l, sign, grid, fd_step=None):
    """Apply the Dirac operator twice to a spinorial harmonic.

    The first application is analytic.  With ``fd_step`` the second one uses
    plain central differences at that step (residual is O(step^2), which is
    what the refinement test measures); otherwise a Richardson pair at 1e-3
    brings the truncation error below the roundoff of the quadrature.
    """
    tt, pp = grid.mesh()
    xi, _ = _xi_and_dirac(l, 0, sign, tt, pp)

    def first(theta, phi):
        return _xi_and_dirac(l, 0, sign, theta, phi)[1]

    if fd_step is None:
        h = 1e-3
        coarse = _dirac_fd(first, tt, pp, h)
        fine = _dirac_fd(first, tt, pp, h / 2)
        second = (4.0 * fine - coarse) / 3.0
    else:
        second = _dirac_fd(first, tt, pp, fd_step)

    target = float((l + 1) ** 2)
    weight = np.sin(tt)
    num = np.real(np.einsum("tp,tpa,tpa->", weight, xi.conj(), second))
    den = np.real(np.einsum("tp,tpa,tpa->", weight, xi.conj(), xi))
    eig = float(num / den)
    defect = second - target * xi
    residual = float(np.max(np.abs(defect)) / np.max(np.abs(xi)))
    return DiracSquareResult(eigenvalue=eig, target=target, residual=residual)


# ---------------------------------------------------------------------------
# coherent-state symbols


def coherent_state(rep, theta, phi):
    """Top eigenvector of x . J at each point: the rotated highest weight.

    Defined intrinsically through the representation's own generators, so no
    Euler-angle convention enters; the overall phase cancels in symbols.
    """
    x = np.stack(
        [
            np.sin(theta) * np.cos(phi),
            np.sin(theta) * np.sin(phi),
            np.cos(theta),
        ],
        axis=-1,
    )
    h = np.einsum("...i,inm->...nm", x, np.stack(rep.generators))
    _, vecs = np.linalg.eigh(h)
    return vecs[..., :, -1]


def symbol_map(a, rep, theta, phi):
    """Pointwise coherent expectation psi^dag A psi."""
    psi = coherent_state(rep, theta, phi)
    return np.einsum("...n,nm,...m->...", psi.conj(), np.asarray(a, dtype=complex), psi)


def mode_convergence(n_list, l, m, n_theta=24, n_phi=48):
    """Sup distance between the symbol of Y_lm(J) and classical Y_lm per size."""
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = np.arange(n_phi) * 2 * np.pi / n_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ref = classical_ylm(l, m, tt, pp)
    out = []
    for n in n_list:
        if l > n - 1:
            raise ValueError(f"l = {l} is not resolved at size {n}")
        rep = irrep(n)
        basis = build_basis(rep)
        sym = symbol_map(basis[(l, m)], rep, tt, pp)
        out.append((int(n), float(np.max(np.abs(sym - ref)))))
    return out
