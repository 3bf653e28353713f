"""The almost paracontact structure (phi, xi, eta) with a compatible metric g."""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import DimMismatch, InvalidStructure
from .frame import TOL_STRUCT, FrameModel, tensor_inner


@dataclass(frozen=True, eq=False)
class ApapStructure:
    """Structure tensors in the components of ``model``'s frame.

    ``phi[k, l]`` is the k-th component of ``phi e_l``; ``xi`` holds vector
    components and ``eta`` covector components.
    """

    model: FrameModel
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        dim = self.model.dim
        phi = np.array(self.phi, dtype=float)
        xi = np.array(self.xi, dtype=float)
        eta = np.array(self.eta, dtype=float)
        if phi.shape != (dim, dim) or xi.shape != (dim,) or eta.shape != (dim,):
            raise DimMismatch(
                f"structure shapes phi{phi.shape} xi{xi.shape} eta{eta.shape} "
                f"do not match frame dimension {dim}"
            )
        for arr in (phi, xi, eta):
            arr.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def g(self) -> np.ndarray:
        return self.model.g

    @property
    def h(self) -> np.ndarray:
        return self.phi @ self.phi

    @property
    def v(self) -> np.ndarray:
        return np.outer(self.xi, self.eta)

    def validate(self, tol=TOL_STRUCT) -> "ApapStructure":
        report = validate_structure(self, tol)
        if not report.valid:
            raise InvalidStructure(
                f"structure axioms fail (worst residual {report.worst():.3e})", report
            )
        return self


@dataclass(frozen=True)
class StructureReport:
    phi_xi: float
    phi_squared: float
    eta_phi: float
    eta_xi: float
    trace_phi: float
    compat_phi: float
    compat_xi: float
    tol: float = TOL_STRUCT

    @property
    def residuals(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "tol"}

    @property
    def valid(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def worst(self) -> float:
        return max(self.residuals.values())

    def as_dict(self) -> dict:
        return {
            "residuals": self.residuals,
            "worst": self.worst(),
            "valid": self.valid,
            "tol": self.tol,
        }


def _maxabs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def validate_structure(s: ApapStructure, tol=TOL_STRUCT) -> StructureReport:
    """Residual of every structure axiom; never raises on failure."""
    phi, xi, eta, g = s.phi, s.xi, s.eta, s.g
    eye = np.eye(s.dim)
    return StructureReport(
        phi_xi=_maxabs(phi @ xi),
        phi_squared=_maxabs(phi @ phi - eye + np.outer(xi, eta)),
        eta_phi=_maxabs(eta @ phi),
        eta_xi=abs(float(eta @ xi) - 1.0),
        trace_phi=abs(float(np.trace(phi))),
        compat_phi=_maxabs(phi.T @ g @ phi - g + np.outer(eta, eta)),
        compat_xi=_maxabs(g @ xi - eta),
        tol=tol,
    )


def projectors(s: ApapStructure):
    """Horizontal and vertical projectors ``h = phi^2`` and ``v = eta (x) xi``."""
    return s.h, s.v


def ell_split(S, s: ApapStructure):
    """Split a (0,2) tensor into its hh, vv and mixed parts."""
    S = np.asarray(S, dtype=float)
    if S.shape != (s.dim, s.dim):
        raise DimMismatch(f"expected ({s.dim}, {s.dim}) array, got {S.shape}")
    h, v = s.h, s.v
    l1 = h.T @ S @ h
    l2 = v.T @ S @ v
    l3 = v.T @ S @ h + h.T @ S @ v
    return l1, l2, l3


def associated_metric(s: ApapStructure) -> np.ndarray:
    """``g~(x, y) = g(x, phi y) + eta(x) eta(y)``."""
    return s.g @ s.phi + np.outer(s.eta, s.eta)


def signature(S, model: FrameModel, tol=TOL_STRUCT):
    """(positive, negative) eigenvalue counts of a symmetric form relative to g."""
    # eigenvalues of g^-1 S are frame independent, unlike those of S
    L = np.linalg.cholesky(model.g)
    Linv = np.linalg.inv(L)
    M = Linv @ np.asarray(S, dtype=float) @ Linv.T
    ev = np.linalg.eigvalsh(0.5 * (M + M.T))
    return int(np.sum(ev > tol)), int(np.sum(ev < -tol))


def bilinear_inner(S, T, model: FrameModel) -> float:
    return tensor_inner(S, T, model)
