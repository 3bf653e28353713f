"""Left-invariant data on a Lie group: structure constants and Levi-Civita connection.

Only homogeneous data is modelled: metric and structure components are
constant in the frame, so the Koszul formula reduces to its bracket terms.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from .errors import DimMismatch, JacobiViolation
from .frame import TOL_STRUCT, FrameModel
from .structure import ApapStructure

log = logging.getLogger(__name__)


def jacobi_tensor(c) -> np.ndarray:
    """``J[i,j,k,m] = sum_l c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m``."""
    return (
        np.einsum("ijl,lkm->ijkm", c, c)
        + np.einsum("jkl,lim->ijkm", c, c)
        + np.einsum("kil,ljm->ijkm", c, c)
    )


@dataclass(frozen=True, eq=False)
class LieAlgebraModel:
    """Structure constants ``c[i, j, k] = c_ij^k`` with ``[E_i, E_j] = c_ij^k E_k``."""

    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimMismatch(f"structure constants must be (d, d, d), got {c.shape}")
        asym = c + c.transpose(1, 0, 2)
        if np.max(np.abs(asym), initial=0.0) > TOL_STRUCT:
            log.warning(
                "structure constants not antisymmetric (max |c_ij + c_ji| = %.3e); "
                "antisymmetrizing",
                float(np.max(np.abs(asym))),
            )
        c = 0.5 * (c - c.transpose(1, 0, 2))
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def from_brackets(cls, dim: int, brackets) -> "LieAlgebraModel":
        """Build from ``(i, j, k, value)`` entries meaning ``c_ij^k = value``, i < j."""
        c = np.zeros((dim, dim, dim))
        for i, j, k, value in brackets:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimMismatch(f"bracket index ({i}, {j}, {k}) out of range")
            if i == j:
                raise ValueError(f"[E_{i}, E_{i}] must vanish")
            if i > j:
                i, j, value = j, i, -value
            c[i, j, k] += value
            c[j, i, k] -= value
        return cls(c)

    def jacobi_residual(self):
        """Worst Jacobi residual and the quadruple (i, j, k, m) attaining it."""
        J = np.abs(jacobi_tensor(self.c))
        idx = np.unravel_index(int(np.argmax(J)), J.shape)
        return float(J[idx]), tuple(int(i) for i in idx)

    def check_jacobi(self, tol=TOL_STRUCT) -> "LieAlgebraModel":
        residual, worst = self.jacobi_residual()
        scale = max(1.0, float(np.max(np.abs(self.c))) ** 2)
        if residual > tol * scale:
            raise JacobiViolation(
                f"Jacobi identity fails at {worst} (residual {residual:.3e})",
                worst=worst,
                residual=residual,
            )
        return self

    def bracket(self, u, v) -> np.ndarray:
        return np.einsum("a,b,abk->k", u, v, self.c)


@dataclass(frozen=True, eq=False)
class Connection:
    """Christoffel array ``gamma[i, j, k]`` with ``nabla_{E_i} E_j = gamma_ij^k E_k``."""

    gamma: np.ndarray

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def covariant(self, u, v) -> np.ndarray:
        """``nabla_u v`` for constant-component vectors u, v."""
        return np.einsum("a,b,abk->k", u, v, self.gamma)

    def bracket(self, u, v) -> np.ndarray:
        return self.covariant(u, v) - self.covariant(v, u)

    def brace(self, u, v) -> np.ndarray:
        return self.covariant(u, v) + self.covariant(v, u)

    def torsion_residual(self, alg: LieAlgebraModel) -> float:
        T = self.gamma - self.gamma.transpose(1, 0, 2) - alg.c
        return float(np.max(np.abs(T)))

    def metric_residual(self, model: FrameModel) -> float:
        low = np.einsum("ijl,lk->ijk", self.gamma, model.g)
        return float(np.max(np.abs(low + low.transpose(0, 2, 1))))


def koszul_rhs(alg: LieAlgebraModel, model: FrameModel) -> np.ndarray:
    """``g([E_i,E_j],E_k) + g([E_k,E_i],E_j) + g([E_k,E_j],E_i)``, indexed (i, j, k)."""
    low = np.einsum("ijl,lk->ijk", alg.c, model.g)
    return low + np.einsum("kij->ijk", low) + np.einsum("kji->ijk", low)


def levi_civita(alg: LieAlgebraModel, model: FrameModel) -> Connection:
    if alg.dim != model.dim:
        raise DimMismatch(f"algebra dimension {alg.dim} != frame dimension {model.dim}")
    alg.check_jacobi()
    lowered = 0.5 * koszul_rhs(alg, model)
    gamma = np.einsum("ijk,km->ijm", lowered, model.g_inv)
    gamma.setflags(write=False)
    return Connection(gamma)


def _check_dims(conn: Connection, s: ApapStructure):
    if conn.dim != s.dim:
        raise DimMismatch(f"connection dimension {conn.dim} != structure dimension {s.dim}")


def nabla_phi(conn: Connection, s: ApapStructure) -> np.ndarray:
    """``D[i, j, k]``: k-th component of ``(nabla_{E_i} phi) E_j``."""
    _check_dims(conn, s)
    G, phi = conn.gamma, s.phi
    return np.einsum("ilk,lj->ijk", G, phi) - np.einsum("kl,ijl->ijk", phi, G)


def nabla_eta_xi(conn: Connection, s: ApapStructure):
    """``(nabla eta)[i, j] = (nabla_{E_i} eta) E_j`` and ``(nabla xi)[i, k]``.

    The second array holds the k-th component of ``nabla_{E_i} xi``.
    """
    _check_dims(conn, s)
    nabla_xi = np.einsum("l,ilk->ik", s.xi, conn.gamma)
    nabla_eta = -np.einsum("k,ijk->ij", s.eta, conn.gamma)
    return nabla_eta, nabla_xi
