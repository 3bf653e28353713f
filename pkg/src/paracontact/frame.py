"""Dense component tensors over a fixed frame.

Tensors are plain ``numpy`` arrays indexed by frame slots: a (0,3) tensor
``T`` has ``T[i, j, k] = T(e_i, e_j, e_k)``, a (0,2) tensor ``S[i, j]`` and a
covector ``w[i]``.  Endomorphisms act on column vectors, so ``(A x)^k =
A[k, l] x^l``.  All contractions that need an inverse metric go through a
:class:`FrameModel`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import string

import numpy as np

from .errors import DimMismatch, NotPositiveDefinite, NotSymmetric

TOL_LIN = 1e-10
TOL_STRUCT = 1e-9
TOL_CLASS = 1e-9


def metric_inverse(g, tol=TOL_LIN):
    """Inverse of a symmetric positive definite matrix via Cholesky."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimMismatch(f"metric must be square, got shape {g.shape}")
    scale = max(1.0, float(np.max(np.abs(g))))
    asym = float(np.max(np.abs(g - g.T)))
    if asym > tol * scale:
        raise NotSymmetric(f"metric is not symmetric (max |g_ij - g_ji| = {asym:.3e})")
    try:
        chol = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("metric is not positive definite") from exc
    if np.any(np.diag(chol) <= 0.0):
        raise NotPositiveDefinite("metric has a non-positive pivot")
    eye = np.eye(g.shape[0])
    linv = np.linalg.solve(chol, eye)
    inv = linv.T @ linv
    return 0.5 * (inv + inv.T)


@dataclass(frozen=True, eq=False)
class FrameModel:
    """Odd-dimensional frame with constant metric components ``g_ij``."""

    g: np.ndarray
    g_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DimMismatch(f"metric must be square, got shape {g.shape}")
        dim = g.shape[0]
        if dim < 3 or dim % 2 == 0:
            raise DimMismatch(f"frame dimension must be odd and >= 3, got {dim}")
        g = 0.5 * (g + g.T) if np.allclose(g, g.T, atol=TOL_LIN) else g
        g_inv = metric_inverse(g)
        g.setflags(write=False)
        g_inv.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "g_inv", g_inv)

    @property
    def dim(self) -> int:
        return self.g.shape[0]

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @classmethod
    def orthonormal(cls, dim: int) -> "FrameModel":
        return cls(np.eye(dim))


def _check(T, model, rank):
    T = np.asarray(T, dtype=float)
    if T.shape != (model.dim,) * rank:
        raise DimMismatch(
            f"expected a rank-{rank} array of size {model.dim}, got shape {T.shape}"
        )
    return T


def tensor_inner(S, T, model: FrameModel) -> float:
    """g-induced inner product of two covariant tensors of equal rank."""
    S = np.asarray(S, dtype=float)
    rank = S.ndim
    S = _check(S, model, rank)
    T = _check(T, model, rank)
    raised = T
    for axis in range(rank):
        # raise one slot at a time; moveaxis keeps slot order stable
        raised = np.moveaxis(np.tensordot(model.g_inv, raised, axes=([1], [axis])), 0, axis)
    return float(np.sum(S * raised))


def tensor_norm(T, model: FrameModel) -> float:
    return float(np.sqrt(max(tensor_inner(T, T, model), 0.0)))


def cubic_inner(S, T, model: FrameModel) -> float:
    """``S_abc T_def g^ad g^be g^cf``."""
    _check(S, model, 3)
    return tensor_inner(S, T, model)


def cubic_norm(T, model: FrameModel) -> float:
    _check(T, model, 3)
    return tensor_norm(T, model)


def pull(T, *slots):
    """Evaluate a covariant tensor with each argument replaced.

    For every slot pass ``None`` (leave the argument free), a matrix ``A``
    (argument ``x`` becomes ``A x``) or a vector ``v`` (argument fixed to
    ``v``; the slot disappears from the result).  ``pull(F, phi, None, xi)``
    is the (0,2) tensor ``(x, y) -> F(phi x, y, xi)``.
    """
    T = np.asarray(T, dtype=float)
    if len(slots) != T.ndim:
        raise DimMismatch(f"need {T.ndim} slot arguments, got {len(slots)}")
    inner = string.ascii_lowercase[: T.ndim]
    outer = string.ascii_lowercase[T.ndim : 2 * T.ndim]
    terms = [inner]
    operands = [T]
    out = ""
    for s, arg in enumerate(slots):
        if arg is None:
            out += inner[s]
            continue
        arg = np.asarray(arg, dtype=float)
        if arg.ndim == 2:
            terms.append(inner[s] + outer[s])
            out += outer[s]
        elif arg.ndim == 1:
            terms.append(inner[s])
        else:
            raise DimMismatch("slot arguments must be vectors or matrices")
        operands.append(arg)
    return np.einsum(",".join(terms) + "->" + out, *operands)
