"""The Lie group family of examples and random structure generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDim3
from .frame import FrameModel
from .lie import LieAlgebraModel
from .structure import ApapStructure


@dataclass(frozen=True)
class LieExample:
    """Parameters ``a = (a_1, ..., a_2n)`` of the left-invariant family."""

    n: int
    a: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        a = tuple(float(x) for x in self.a)
        if len(a) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} parameters, got {len(a)}")
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1


def example_brackets(ex: LieExample) -> np.ndarray:
    """Structure constants: ``[E0, Ei] = -a_i Ei - a_{n+i} E_{n+i}``,
    ``[E0, E_{n+i}] = -a_{n+i} Ei + a_i E_{n+i}``, all other brackets zero."""
    n, a = ex.n, ex.a
    c = np.zeros((ex.dim,) * 3)
    for i in range(1, n + 1):
        p, q = a[i - 1], a[n + i - 1]
        c[0, i, i] = -p
        c[0, i, n + i] = -q
        c[0, n + i, i] = -q
        c[0, n + i, n + i] = p
    return c - c.transpose(1, 0, 2)


def paracomplex_swap(n: int) -> np.ndarray:
    """phi with ``phi E0 = 0``, ``phi Ei = E_{n+i}``, ``phi E_{n+i} = Ei``."""
    phi = np.zeros((2 * n + 1, 2 * n + 1))
    for i in range(1, n + 1):
        phi[n + i, i] = 1.0
        phi[i, n + i] = 1.0
    return phi


def build(ex: LieExample):
    """Return ``(algebra, structure, model)`` for the example, all validated."""
    model = FrameModel.orthonormal(ex.dim)
    alg = LieAlgebraModel(example_brackets(ex)).check_jacobi()
    e0 = np.eye(ex.dim)[0]
    s = ApapStructure(model, paracomplex_swap(ex.n), e0, e0).validate()
    return alg, s, model


def expected_class(ex: LieExample) -> frozenset:
    """Class membership of the three-dimensional family (a_1, a_2)."""
    if ex.n != 1:
        raise NotDim3("closed-form class membership is only known for n = 1")
    a1, a2 = ex.a
    members = set()
    if a2 != 0:
        members.add(4)
    if a1 != 0:
        members.add(9)
    return frozenset(members)


def _frame_change(dim: int, rng: np.random.Generator, max_cond=10.0) -> np.ndarray:
    q1, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    q2, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    sv = np.exp(rng.uniform(0.0, np.log(max_cond), size=dim)) * rng.uniform(0.5, 2.0)
    return q1 @ np.diag(sv) @ q2


def random_structure(dim: int, seed: int):
    """A valid structure in a random (non-orthonormal) frame.

    Start from the adapted orthonormal frame and rewrite every component in
    the frame ``e'_a = e_b A^b_a`` for a random ``A`` with condition number
    at most 10.
    """
    if dim < 3 or dim % 2 == 0:
        raise ValueError(f"dimension must be odd and >= 3, got {dim}")
    n = (dim - 1) // 2
    rng = np.random.default_rng(seed)
    A = _frame_change(dim, rng)
    Ainv = np.linalg.inv(A)
    e0 = np.eye(dim)[0]
    g = A.T @ A
    model = FrameModel(0.5 * (g + g.T))
    s = ApapStructure(model, Ainv @ paracomplex_swap(n) @ A, Ainv @ e0, e0 @ A)
    return s.validate(), model
