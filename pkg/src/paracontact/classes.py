"""The fundamental tensor F and its decomposition into the eleven basic classes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadClassIndex,
    BadN,
    DimMismatch,
    NotDim3,
    NotPhiBasis,
    ResidualTooLarge,
    SymmetryViolation,
)
from .frame import TOL_CLASS, TOL_STRUCT, cubic_norm, pull
from .structure import ApapStructure

CLASS_INDICES = tuple(range(1, 12))


def class_name(i: int) -> str:
    return f"F{i}"


@dataclass(frozen=True, eq=False)
class FundamentalTensor:
    """``F[i, j, k] = g((nabla_{e_i} phi) e_j, e_k)`` on a given structure."""

    F: np.ndarray
    s: ApapStructure

    def __post_init__(self):
        F = np.array(self.F, dtype=float)
        if F.shape != (self.s.dim,) * 3:
            raise DimMismatch(f"F must have shape {(self.s.dim,) * 3}, got {F.shape}")
        F.setflags(write=False)
        object.__setattr__(self, "F", F)

    @property
    def norm(self) -> float:
        return cubic_norm(self.F, self.s.model)

    def symmetry_residuals(self):
        """Residuals (absolute, componentwise) of the two defining symmetries of F."""
        return symmetry_residuals(self.F, self.s)

    def check(self, tol=TOL_STRUCT) -> "FundamentalTensor":
        scale = max(1.0, float(np.max(np.abs(self.F))))
        for name, (res, worst) in zip(("swap", "phi"), _symmetry_defects(self.F, self.s)):
            if res > tol * scale:
                raise SymmetryViolation(
                    f"F violates the {name} symmetry at {worst} (residual {res:.3e})",
                    worst=worst,
                    residual=res,
                )
        return self


def phi_relation_rhs(F, s: ApapStructure) -> np.ndarray:
    """``-F(x, phi y, phi z) + eta(y) F(x, xi, z) + eta(z) F(x, y, xi)``."""
    return (
        -pull(F, None, s.phi, s.phi)
        + np.einsum("b,ac->abc", s.eta, pull(F, None, s.xi, None))
        + np.einsum("c,ab->abc", s.eta, pull(F, None, None, s.xi))
    )


def _worst(defect):
    idx = np.unravel_index(int(np.argmax(np.abs(defect))), defect.shape)
    return float(np.abs(defect[idx])), tuple(int(i) for i in idx)


def _symmetry_defects(F, s):
    F = np.asarray(F, dtype=float)
    return _worst(F - F.transpose(0, 2, 1)), _worst(F - phi_relation_rhs(F, s))


def symmetry_residuals(F, s: ApapStructure):
    (swap, _), (rel, _) = _symmetry_defects(F, s)
    return swap, rel


def compute_F(nabla_phi, s: ApapStructure, tol=TOL_STRUCT) -> FundamentalTensor:
    """Lower the last index of ``nabla phi``; checks the symmetries of F."""
    nabla_phi = np.asarray(nabla_phi, dtype=float)
    if nabla_phi.shape != (s.dim,) * 3:
        raise DimMismatch(f"nabla phi must have shape {(s.dim,) * 3}")
    F = np.einsum("ijl,lk->ijk", nabla_phi, s.g)
    return FundamentalTensor(F, s).check(tol)


@dataclass(frozen=True, eq=False)
class LeeForms:
    theta: np.ndarray
    theta_star: np.ndarray
    omega: np.ndarray


def lee_forms(F: FundamentalTensor) -> LeeForms:
    s = F.s
    ginv, h = s.model.g_inv, s.h
    # trace over the paracontact distribution only; the xi-direction is omega
    theta = np.einsum("ab,pa,qb,pqc->c", ginv, h, h, F.F)
    theta_star = np.einsum("ab,qb,aqc->c", ginv, s.phi, F.F)
    omega = pull(F.F, s.xi, s.xi, None)
    return LeeForms(theta, theta_star, omega)


def _vertical(M, eta):
    """``M(x, y) eta(z) + M(x, z) eta(y)``."""
    return np.einsum("ab,c->abc", M, eta) + np.einsum("ac,b->abc", M, eta)


def components(F: FundamentalTensor, lee: LeeForms | None = None) -> dict:
    """All eleven components ``{i: F_i}`` as (0,3) arrays."""
    s = F.s
    T = F.F
    n = s.n
    phi, h, xi, eta = s.phi, s.h, s.xi, s.eta
    lee = lee or lee_forms(F)
    th, ths, om = lee.theta, lee.theta_star, lee.omega

    g_pp = phi.T @ s.g @ phi  # g(phi x, phi y)
    g_p = s.g @ phi  # g(x, phi y)
    th_h = th @ h  # theta(phi^2 z)
    th_p = th @ phi  # theta(phi z)

    out = {}
    out[1] = (
        np.einsum("ab,c->abc", g_pp, th_h)
        + np.einsum("ac,b->abc", g_pp, th_h)
        - np.einsum("ab,c->abc", g_p, th_p)
        - np.einsum("ac,b->abc", g_p, th_p)
    ) / (2 * n)

    hhh = pull(T, h, h, h)
    pph = pull(T, phi, phi, h)
    hhh_yzx = np.einsum("bca->abc", hhh)  # F(h y, h z, h x)
    hhh_zxy = np.einsum("cab->abc", hhh)  # F(h z, h x, h y)
    pph_yzx = np.einsum("bca->abc", pph)  # F(phi y, phi z, h x)
    pph_zyx = np.einsum("cba->abc", pph)  # F(phi z, phi y, h x)
    out[2] = 0.25 * (2 * hhh + hhh_yzx + hhh_zxy - pph_yzx - pph_zyx) - out[1]
    out[3] = 0.25 * (2 * hhh - hhh_yzx - hhh_zxy + pph_yzx + pph_zyx)

    th_xi = float(th @ xi)
    ths_xi = float(ths @ xi)
    out[4] = th_xi / (2 * n) * _vertical(g_pp, eta)
    out[5] = ths_xi / (2 * n) * _vertical(g_p, eta)

    A = pull(T, h, h, xi)  # F(h x, h y, xi)
    B = pull(T, phi, phi, xi)  # F(phi x, phi y, xi)
    out[6] = 0.25 * _vertical(A + A.T + B + B.T, eta) - out[4] - out[5]
    out[7] = 0.25 * _vertical(A - A.T + B - B.T, eta)
    out[8] = 0.25 * _vertical(A + A.T - B - B.T, eta)
    out[9] = 0.25 * _vertical(A - A.T - B + B.T, eta)

    out[10] = np.einsum("a,bc->abc", eta, pull(T, xi, h, h))
    out[11] = np.einsum("a,b,c->abc", eta, eta, om) + np.einsum("a,c,b->abc", eta, eta, om)
    return out


def component(F: FundamentalTensor, i: int) -> np.ndarray:
    if i not in CLASS_INDICES:
        raise BadClassIndex(f"class index must be in 1..11, got {i}")
    return components(F)[i]


def f4_prime_tensor(s: ApapStructure) -> np.ndarray:
    """``-g(phi x, phi y) eta(z) - g(phi x, phi z) eta(y)``."""
    return -_vertical(s.phi.T @ s.g @ s.phi, s.eta)


@dataclass(frozen=True)
class ClassReport:
    norms: tuple
    norm_F: float
    residual: float
    members: tuple
    is_F0: bool
    is_F4_prime: bool
    theta_xi: float
    theta_star_xi: float
    f4_prime_residual: float
    tol: float = TOL_CLASS

    @property
    def class_names(self) -> list:
        if self.is_F0:
            return ["F0"]
        names = [class_name(i) for i in self.members]
        if self.is_F4_prime:
            names = ["F4'" if nm == "F4" else nm for nm in names]
        return names

    def as_dict(self) -> dict:
        return {
            "norms": {class_name(i): v for i, v in zip(CLASS_INDICES, self.norms)},
            "norm_F": self.norm_F,
            "residual": self.residual,
            "members": list(self.members),
            "classes": self.class_names,
            "is_F0": self.is_F0,
            "is_F4_prime": self.is_F4_prime,
            "theta_xi": self.theta_xi,
            "theta_star_xi": self.theta_star_xi,
            "f4_prime_residual": self.f4_prime_residual,
        }


def classify(F: FundamentalTensor, tol=TOL_CLASS) -> ClassReport:
    s = F.s
    model = s.model
    lee = lee_forms(F)
    comps = components(F, lee)
    normF = F.norm
    scale = tol * max(1.0, normF)
    residual = cubic_norm(F.F - sum(comps.values()), model)
    if residual > scale:
        raise ResidualTooLarge(
            f"F is not in the admissible tensor space (residual {residual:.3e})"
        )
    norms = tuple(cubic_norm(comps[i], model) for i in CLASS_INDICES)
    members = tuple(i for i, nm in zip(CLASS_INDICES, norms) if nm > scale)
    f4p_res = cubic_norm(comps[4] - f4_prime_tensor(s), model)
    return ClassReport(
        norms=norms,
        norm_F=normF,
        residual=residual,
        members=members,
        is_F0=not members,
        is_F4_prime=members == (4,) and f4p_res <= scale,
        theta_xi=float(lee.theta @ s.xi),
        theta_star_xi=float(lee.theta_star @ s.xi),
        f4_prime_residual=f4p_res,
        tol=tol,
    )


def project_to_space(T, s: ApapStructure, tol=TOL_STRUCT, max_iter=3) -> np.ndarray:
    """Orthogonal projection of a (0,3) array onto the admissible space of F.

    Symmetrizes the last two slots, keeps the mixed horizontal/vertical part,
    takes the phi-anti-invariant half of the horizontal-horizontal part and
    drops the vertical-vertical part.
    """
    h, phi, xi, eta = s.h, s.phi, s.xi, s.eta
    F = np.asarray(T, dtype=float)
    for _ in range(max_iter):
        F = 0.5 * (F + F.transpose(0, 2, 1))
        F = (
            0.5 * (pull(F, None, h, h) - pull(F, None, phi, phi))
            + np.einsum("b,ac->abc", eta, pull(F, None, xi, h))
            + np.einsum("c,ab->abc", eta, pull(F, None, h, xi))
        )
        scale = max(1.0, float(np.max(np.abs(F))))
        if max(symmetry_residuals(F, s)) <= tol * scale:
            return F
    raise SymmetryViolation(
        f"projection did not reach the admissible space in {max_iter} iterations"
    )


def random_F(s: ApapStructure, seed: int) -> FundamentalTensor:
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((s.dim,) * 3)
    return FundamentalTensor(project_to_space(raw, s), s)


def pure_class_sample(s: ApapStructure, i: int, seed: int) -> FundamentalTensor:
    """A random tensor lying in the single class ``i``."""
    F = random_F(s, seed)
    return FundamentalTensor(component(F, i), s)


_DIM_FORMULAS = {
    1: lambda n: 2 * n,
    2: lambda n: n * (n - 1) * (n + 2),
    3: lambda n: n * n * (n - 1),
    4: lambda n: 1,
    5: lambda n: 1,
    6: lambda n: (n - 1) * (n + 2),
    7: lambda n: n * (n - 1),
    8: lambda n: n * n,
    9: lambda n: n * n,
    10: lambda n: n * n,
    11: lambda n: 2 * n,
}


def subspace_dim_formula(n: int, i: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise BadN(f"n must be a positive integer, got {n!r}")
    if i not in _DIM_FORMULAS:
        raise BadClassIndex(f"class index must be in 1..11, got {i}")
    return int(_DIM_FORMULAS[i](int(n)))


def numeric_rank(vectors, tol=1e-8) -> int:
    M = np.asarray(vectors, dtype=float)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, float(sv[0]) if sv.size else 0.0)))


@dataclass
class SubspaceRanks:
    per_class: dict = field(default_factory=dict)
    total: int = 0


def subspace_dims_numeric(s: ApapStructure) -> SubspaceRanks:
    """Numerical ranks of every class subspace and of the whole admissible space."""
    dim = s.dim
    spanning = []
    images = {i: [] for i in CLASS_INDICES}
    for flat in range(dim**3):
        E = np.zeros(dim**3)
        E[flat] = 1.0
        P = project_to_space(E.reshape((dim,) * 3), s)
        spanning.append(P.ravel())
        comps = components(FundamentalTensor(P, s))
        for i in CLASS_INDICES:
            images[i].append(comps[i].ravel())
    return SubspaceRanks(
        per_class={i: numeric_rank(images[i]) for i in CLASS_INDICES},
        total=numeric_rank(spanning),
    )


def subspace_dim_numeric(s: ApapStructure, i: int) -> int:
    if i not in CLASS_INDICES:
        raise BadClassIndex(f"class index must be in 1..11, got {i}")
    return subspace_dims_numeric(s).per_class[i]


@dataclass(frozen=True)
class Dim3Scalars:
    theta0: float
    theta_star0: float
    theta1: float
    theta2: float
    omega1: float
    omega2: float
    lam: float
    mu: float
    nu: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _is_phi_basis(s: ApapStructure, tol) -> bool:
    phi = np.zeros((3, 3))
    phi[2, 1] = phi[1, 2] = 1.0
    e0 = np.array([1.0, 0.0, 0.0])
    return (
        np.allclose(s.g, np.eye(3), atol=tol)
        and np.allclose(s.xi, e0, atol=tol)
        and np.allclose(s.eta, e0, atol=tol)
        and np.allclose(s.phi, phi, atol=tol)
    )


def dim3_components(F: FundamentalTensor, tol=TOL_STRUCT) -> Dim3Scalars:
    s = F.s
    if s.dim != 3:
        raise NotDim3(f"named components need dimension 3, got {s.dim}")
    if not _is_phi_basis(s, tol):
        raise NotPhiBasis("frame is not an orthonormal phi-basis {xi, e, phi e}")
    T = F.F
    lee = lee_forms(F)
    return Dim3Scalars(
        theta0=float(lee.theta[0]),
        theta_star0=float(lee.theta_star[0]),
        theta1=float(lee.theta[1]),
        theta2=float(lee.theta[2]),
        omega1=float(lee.omega[1]),
        omega2=float(lee.omega[2]),
        lam=0.5 * float(T[1, 1, 0] - T[2, 2, 0]),
        mu=0.5 * float(T[1, 2, 0] - T[2, 1, 0]),
        nu=0.5 * float(T[0, 1, 1] - T[0, 2, 2]),
    )


def _sym_yz(i, j, k):
    """Array of ``x^i (y^j z^k + y^k z^j)``."""
    T = np.zeros((3, 3, 3))
    T[i, j, k] += 1.0
    T[i, k, j] += 1.0
    return T


def dim3_class_tensors(sc: Dim3Scalars) -> dict:
    """The eleven components rebuilt from the named dimension-3 scalars."""
    out = {i: np.zeros((3, 3, 3)) for i in CLASS_INDICES}
    F1 = np.zeros((3, 3, 3))
    F1[1, 1, 1], F1[1, 2, 2] = sc.theta1, -sc.theta1
    F1[2, 1, 1], F1[2, 2, 2] = -sc.theta2, sc.theta2
    out[1] = F1
    out[4] = sc.theta0 / 2 * (_sym_yz(1, 0, 1) + _sym_yz(2, 0, 2))
    out[5] = sc.theta_star0 / 2 * (_sym_yz(1, 0, 2) + _sym_yz(2, 0, 1))
    out[8] = sc.lam * (_sym_yz(1, 0, 1) - _sym_yz(2, 0, 2))
    out[9] = sc.mu * (_sym_yz(1, 0, 2) - _sym_yz(2, 0, 1))
    F10 = np.zeros((3, 3, 3))
    F10[0, 1, 1], F10[0, 2, 2] = sc.nu, -sc.nu
    out[10] = F10
    out[11] = sc.omega1 * _sym_yz(0, 0, 1) + sc.omega2 * _sym_yz(0, 0, 2)
    return out
