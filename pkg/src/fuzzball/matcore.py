"""
Dense complex matrix utilities shared by every other module.

Matrices are plain ``numpy.ndarray`` objects with dtype complex128 and
row-major layout.  Constructors validate shape and finiteness; everything
else is a pure function of its inputs.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "dagger",
    "commutator",
    "anticommutator",
    "frobenius_norm",
    "frobenius_distance",
    "spectral_norm",
    "pseudo_inverse",
    "hermitian_sqrt",
    "is_unitary",
    "random_unitary",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute comparison thresholds used across the library."""

    relative: float = 1e-10
    absolute: float = 1e-12

    def __post_init__(self):
        if self.relative <= 0 or self.absolute <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def as_matrix(obj):
    """Coerce to a finite 2-d complex128 array (copying only if needed)."""
    a = np.asarray(obj, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def dagger(a):
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def frobenius_norm(a):
    return float(np.linalg.norm(a))


def frobenius_distance(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def spectral_norm(a):
    return float(np.linalg.norm(a, 2))


def pseudo_inverse(a, tol=DEFAULT_TOL):
    """Moore-Penrose inverse; singular values below tol.absolute * s_max drop."""
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return dagger(a)
    cut = tol.absolute * s[0]
    inv = np.where(s > cut, 1.0 / np.where(s > cut, s, 1.0), 0.0)
    return dagger(vh) @ np.diag(inv) @ dagger(u)


def hermitian_sqrt(a, tol=DEFAULT_TOL):
    """Square root of a Hermitian PSD matrix via eigendecomposition.

    Eigenvalues in [-tol, tol] (relative to the largest one) are clamped to
    zero so that exact kernels stay exact; anything more negative raises.
    """
    a = as_matrix(a)
    herm_defect = frobenius_distance(a, dagger(a))
    scale = max(frobenius_norm(a), 1.0)
    if herm_defect > tol.relative * scale:
        raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
    w, v = np.linalg.eigh((a + dagger(a)) / 2)
    wmax = max(float(w[-1]), 0.0)
    cut = tol.relative * max(wmax, 1.0)
    if w[0] < -cut:
        raise ValueError(f"negative eigenvalue {w[0]:.3e} beyond tolerance")
    w = np.where(w > cut, w, 0.0)
    return (v * np.sqrt(w)) @ dagger(v)


def is_unitary(a, tol=DEFAULT_TOL):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    n = a.shape[0]
    return frobenius_distance(dagger(a) @ a, np.eye(n)) <= tol.relative * n


def random_unitary(n, rng):
    """Haar-distributed unitary from QR of a complex Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def matrix_to_json(a):
    """Interchange form: {"rows", "cols", "data": [[re, im], ...] row-major}."""
    a = as_matrix(a)
    data = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(obj):
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError("data length does not match rows*cols")
    flat = np.array([complex(re, im) for re, im in data])
    return as_matrix(flat.reshape(rows, cols))
