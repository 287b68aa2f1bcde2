"""
Spin representations in the doubled normalization [J_i, J_j] = 2i eps_ijk J_k,
and the bilinear maps that extract them from a ground-state doublet.

Index conventions (used verbatim across the library):

    jmat[a][b] = g^a gd_b          upper index first
    jbar[a][b] = gd_a g^b          lower index first
    J_i    = sum_{a,b} sigma_i[b, a] jmat[b][a]
    Jbar_i = sum_{a,b} sigma_i[b, a] jbar[a][b]

i.e. both contractions use the transposed Pauli matrices; for Jbar the
dagger factor sits on the left.
"""

from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    as_matrix,
    commutator,
    dagger,
    frobenius_norm,
    matrix_from_json,
    matrix_to_json,
)

__all__ = [
    "PAULI",
    "EPS3",
    "Su2Representation",
    "BilinearSet",
    "irrep",
    "direct_sum",
    "casimir",
    "su2_closure_residual",
    "bilinears",
    "u2_structure_residual",
    "doublet_covariance_residual",
    "intertwiner_residual",
]

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Levi-Civita symbol on three indices
EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPS3[_i, _j, _k] = 1.0
    EPS3[_j, _i, _k] = -1.0


def pauli_contract(blocks):
    """sum_{a,b} sigma_i[b, a] blocks[b][a] for i = 1, 2, 3.

    Reading blocks[b][a] as a tensor with upper index b and lower index a,
    this contracts with the transposed Pauli matrices; the same helper serves
    J_i and Jbar_i, the caller supplies the matching block table.
    """
    out = []
    for sig in PAULI:
        out.append(sum(sig[b, a] * blocks[b][a] for a in range(2) for b in range(2)))
    return out


@dataclass(frozen=True)
class Su2Representation:
    """Generator triple (j1, j2, j3) with its irreducible block partition."""

    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray
    partition: tuple = field(default=())

    def __post_init__(self):
        for name in ("j1", "j2", "j3"):
            object.__setattr__(self, name, as_matrix(getattr(self, name)))
        if not (self.j1.shape == self.j2.shape == self.j3.shape):
            raise ValueError("generators must share a shape")
        object.__setattr__(self, "partition", tuple(int(n) for n in self.partition))

    @property
    def dim(self):
        return self.j1.shape[0]

    @property
    def generators(self):
        return (self.j1, self.j2, self.j3)

    def is_irreducible(self):
        return len(self.partition) == 1

    def to_json(self):
        return {
            "schema": 1,
            "partition": list(self.partition),
            "j1": matrix_to_json(self.j1),
            "j2": matrix_to_json(self.j2),
            "j3": matrix_to_json(self.j3),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            j1=matrix_from_json(obj["j1"]),
            j2=matrix_from_json(obj["j2"]),
            j3=matrix_from_json(obj["j3"]),
            partition=tuple(obj.get("partition", ())),
        )


def irrep(n):
    """Irreducible generators of dimension n, J3 ascending along the diagonal.

    Ladder entries are twice the textbook alpha_{j,m} = sqrt((j+m)(j-m+1)),
    which is what produces the doubled structure constants.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    k = np.arange(1, n + 1)
    j3 = np.diag(2.0 * (k - (n + 1) / 2)).astype(complex)
    jp = np.zeros((n, n), dtype=complex)
    rows = np.arange(2, n + 1)
    jp[rows - 1, rows - 2] = 2.0 * np.sqrt((rows - 1) * (n - rows + 1))
    jm = dagger(jp)
    return Su2Representation(
        j1=(jp + jm) / 2, j2=(jp - jm) / 2j, j3=j3, partition=(n,)
    )


def direct_sum(reps):
    if not reps:
        raise ValueError("need at least one representation")
    total = sum(r.dim for r in reps)
    gens = [np.zeros((total, total), dtype=complex) for _ in range(3)]
    partition = []
    offset = 0
    for r in reps:
        n = r.dim
        for i, g in enumerate(r.generators):
            gens[i][offset : offset + n, offset : offset + n] = g
        partition.extend(r.partition)
        offset += n
    return Su2Representation(*gens, partition=tuple(partition))


def casimir(rep):
    return sum(g @ g for g in rep.generators)


def su2_closure_residual(gens):
    """max_ij || [J_i, J_j] - 2i eps_ijk J_k ||_F."""
    res = 0.0
    for i in range(3):
        for j in range(3):
            rhs = sum(2j * EPS3[i, j, k] * gens[k] for k in range(3))
            res = max(res, frobenius_norm(commutator(gens[i], gens[j]) - rhs))
    return res


@dataclass(frozen=True)
class BilinearSet:
    """All quadratic invariants of a doublet, plus their Pauli contractions."""

    jmat: tuple  # jmat[a][b] = g^a gd_b
    jbar: tuple  # jbar[a][b] = gd_a g^b
    j: tuple  # su(2) triple from jmat
    jbar_i: tuple  # su(2) triple from jbar
    trace_j: np.ndarray
    trace_jbar: np.ndarray


def bilinears(sol):
    g = sol.matrices
    gd = sol.daggers
    jmat = tuple(tuple(g[a] @ gd[b] for b in range(2)) for a in range(2))
    jbar = tuple(tuple(gd[a] @ g[b] for b in range(2)) for a in range(2))
    j = pauli_contract([[jmat[b][a] for a in range(2)] for b in range(2)])
    jb = pauli_contract([[jbar[a][b] for a in range(2)] for b in range(2)])
    return BilinearSet(
        jmat=jmat,
        jbar=jbar,
        j=tuple(j),
        jbar_i=tuple(jb),
        trace_j=jmat[0][0] + jmat[1][1],
        trace_jbar=jbar[0][0] + jbar[1][1],
    )


def su2_from_bilinears(b, partition=(), barred=False):
    gens = b.jbar_i if barred else b.j
    return Su2Representation(*gens, partition=partition)


def u2_structure_residual(b):
    """Worst residual of the two u(2) relations over all 16+16 index choices.

    With the upper index naming the undaggered factor in both tables,
    i.e. J^a_b = g^a gd_b and K^a_b = gd_b g^a, both copies satisfy

        [T^a_b, T^m_n] = d^m_b T^a_n - d^a_n T^m_b.
    """
    kbar = tuple(tuple(b.jbar[bb][a] for bb in range(2)) for a in range(2))
    res = 0.0
    for table in (b.jmat, kbar):
        for a in range(2):
            for bb in range(2):
                for m in range(2):
                    for n in range(2):
                        lhs = commutator(table[a][bb], table[m][n])
                        rhs = (m == bb) * table[a][n] - (a == n) * table[m][bb]
                        res = max(res, frobenius_norm(lhs - rhs))
    return res


def doublet_covariance_residual(sol, b=None):
    """Residual of the doublet transformation laws of (g1, g2).

    Checks, for all free indices:
      J_i g^a - g^a Jb_i           = sigma_i[b, a] g^b
      gd_a J_i - Jb_i gd_a         = sigma_i[a, b] gd_b
      J^a_b g^c - g^c Jb^a_b       = d^c_b g^a - d^a_b g^c
      Jb^a_b gd_c - gd_c J^a_b     = -d^a_c gd_b + d^a_b gd_c
    where Jb^a_b denotes gd_b g^a.
    """
    if b is None:
        b = bilinears(sol)
    g = sol.matrices
    gd = sol.daggers
    res = 0.0
    for i in range(3):
        for a in range(2):
            rhs = sum(PAULI[i][bb, a] * g[bb] for bb in range(2))
            res = max(res, frobenius_norm(b.j[i] @ g[a] - g[a] @ b.jbar_i[i] - rhs))
            rhs = sum(PAULI[i][a, bb] * gd[bb] for bb in range(2))
            res = max(res, frobenius_norm(gd[a] @ b.j[i] - b.jbar_i[i] @ gd[a] - rhs))
    for a in range(2):
        for bb in range(2):
            jbar_ab = b.jbar[bb][a]  # gd_b g^a
            for c in range(2):
                lhs = b.jmat[a][bb] @ g[c] - g[c] @ jbar_ab
                rhs = (c == bb) * g[a] - (a == bb) * g[c]
                res = max(res, frobenius_norm(lhs - rhs))
                lhs = jbar_ab @ gd[c] - gd[c] @ b.jmat[a][bb]
                rhs = -(a == c) * gd[bb] + (a == bb) * gd[c]
                res = max(res, frobenius_norm(lhs - rhs))
    return res


def intertwiner_residual(sol, b=None):
    """Residuals of gd_c J_i g^c = (N+1) Jb_i and g^c Jb_i gd_c = (N-2) J_i."""
    if not sol.is_irreducible():
        raise ValueError("intertwiner factors are only stated for one block")
    if b is None:
        b = bilinears(sol)
    n = sol.size
    g = sol.matrices
    gd = sol.daggers
    res = 0.0
    for i in range(3):
        lhs = sum(gd[c] @ b.j[i] @ g[c] for c in range(2))
        res = max(res, frobenius_norm(lhs - (n + 1) * b.jbar_i[i]))
        lhs = sum(g[c] @ b.jbar_i[i] @ gd[c] for c in range(2))
        res = max(res, frobenius_norm(lhs - (n - 2) * b.j[i]))
    return res
