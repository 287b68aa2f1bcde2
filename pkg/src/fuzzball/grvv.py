"""
Ground-state doublets of the cubic bifundamental matrix equation

    G^a = G^a Gd_b G^b - G^b Gd_b G^a        (sum over b = 1, 2)

together with block-diagonal (reducible) solutions, gauge dressing and the
residual evaluators that certify a candidate doublet.
"""

from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    as_matrix,
    dagger,
    frobenius_norm,
    is_unitary,
    matrix_from_json,
    matrix_to_json,
)

__all__ = [
    "GrvvSolution",
    "ground_state",
    "block_solution",
    "gauge_dress",
    "grvv_residual",
    "sphere_constraints",
    "real_coordinates",
]


@dataclass(frozen=True)
class GrvvSolution:
    """A doublet (g1, g2) of N x N matrices plus block provenance.

    ``partition`` records the irreducible block sizes the solution was built
    from; gauge dressing hides the blocks in the matrices but keeps the
    metadata.
    """

    g1: np.ndarray
    g2: np.ndarray
    partition: tuple = field(default=())
    dressed: bool = False

    def __post_init__(self):
        g1 = as_matrix(self.g1)
        g2 = as_matrix(self.g2)
        if g1.shape != g2.shape:
            raise ValueError("g1 and g2 must share a shape")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "partition", tuple(int(n) for n in self.partition))

    @property
    def size(self):
        return self.g1.shape[0]

    @property
    def matrices(self):
        return (self.g1, self.g2)

    @property
    def daggers(self):
        return (dagger(self.g1), dagger(self.g2))

    def is_irreducible(self):
        return len(self.partition) == 1

    def to_json(self):
        return {
            "schema": 1,
            "partition": list(self.partition),
            "g1": matrix_to_json(self.g1),
            "g2": matrix_to_json(self.g2),
            "dressed": self.dressed,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            g1=matrix_from_json(obj["g1"]),
            g2=matrix_from_json(obj["g2"]),
            partition=tuple(obj.get("partition", ())),
            dressed=bool(obj.get("dressed", False)),
        )


def ground_state(n):
    """Irreducible solution of size n:

    (g1)_{m,m} = sqrt(m-1),  (g2)_{m,m+1} = sqrt(n-m)   (1-based m).
    """
    if n < 1:
        raise ValueError("size must be at least 1")
    g1 = np.diag(np.sqrt(np.arange(n, dtype=float))).astype(complex)
    g2 = np.zeros((n, n), dtype=complex)
    m = np.arange(1, n)
    g2[m - 1, m] = np.sqrt(n - m)
    return GrvvSolution(g1=g1, g2=g2, partition=(n,))


def block_solution(partition):
    """Direct sum of ground states along the diagonal."""
    partition = tuple(int(n) for n in partition)
    if not partition:
        raise ValueError("partition must be nonempty")
    if any(n < 1 for n in partition):
        raise ValueError("every block size must be at least 1")
    total = sum(partition)
    g1 = np.zeros((total, total), dtype=complex)
    g2 = np.zeros((total, total), dtype=complex)
    offset = 0
    for n in partition:
        blk = ground_state(n)
        g1[offset : offset + n, offset : offset + n] = blk.g1
        g2[offset : offset + n, offset : offset + n] = blk.g2
        offset += n
    return GrvvSolution(g1=g1, g2=g2, partition=partition)


def gauge_dress(sol, u, uhat, tol=DEFAULT_TOL):
    """Apply g^a -> u . g^a . uhat^dagger with unitary u, uhat."""
    u = as_matrix(u)
    uhat = as_matrix(uhat)
    if not is_unitary(u, tol):
        raise ValueError("left factor is not unitary within tolerance")
    if not is_unitary(uhat, tol):
        raise ValueError("right factor is not unitary within tolerance")
    uh = dagger(uhat)
    return GrvvSolution(
        g1=u @ sol.g1 @ uh,
        g2=u @ sol.g2 @ uh,
        partition=sol.partition,
        dressed=True,
    )


def grvv_residual(sol):
    """max_a || g^a - (g^a gd_b g^b - g^b gd_b g^a) ||_F, b summed over {1,2}."""
    g = sol.matrices
    gd = sol.daggers
    right = gd[0] @ g[0] + gd[1] @ g[1]
    left = g[0] @ gd[0] + g[1] @ gd[1]
    res = 0.0
    for a in range(2):
        res = max(res, frobenius_norm(g[a] - (g[a] @ right - left @ g[a])))
    return res


def sphere_constraints(sol):
    """Residuals of g^a gd_a = (N-1) 1 and gd_a g^a = N(1 - E_11) for one block."""
    if not sol.is_irreducible():
        raise ValueError("sphere constraints are stated for irreducible solutions")
    n = sol.size
    g = sol.matrices
    gd = sol.daggers
    left = g[0] @ gd[0] + g[1] @ gd[1]
    right = gd[0] @ g[0] + gd[1] @ g[1]
    target = n * np.eye(n, dtype=complex)
    target[0, 0] = 0.0
    return (
        frobenius_norm(left - (n - 1) * np.eye(n)),
        frobenius_norm(right - target),
    )


def real_coordinates(sol):
    """Hermitian parts (x1, x2, x3, x4) with g1 = x1 + i x2, g2 = x3 + i x4."""
    g1, g2 = sol.matrices
    x1 = (g1 + dagger(g1)) / 2
    x2 = (g1 - dagger(g1)) / 2j
    x3 = (g2 + dagger(g2)) / 2
    x4 = (g2 - dagger(g2)) / 2j
    return x1, x2, x3, x4
