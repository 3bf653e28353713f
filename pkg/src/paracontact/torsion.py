"""Nijenhuis tensors N^(k), their associated counterparts, and structural predicates.

Everything is expressed through the fundamental tensor F, so it works on
raw F data.  With a :class:`~paracontact.lie.Connection` the bracket
quantities ``[phi, phi]`` and ``{phi, phi}`` are also available and used as
an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import FundamentalTensor, classify, f4_prime_tensor
from .errors import ModeUnsupported
from .frame import TOL_CLASS, cubic_norm, pull, tensor_norm
from .lie import Connection, nabla_eta_xi
from .structure import ApapStructure, ell_split


def _xphi_xi(F: FundamentalTensor) -> np.ndarray:
    """``(x, y) -> F(x, phi y, xi)``."""
    return pull(F.F, None, F.s.phi, F.s.xi)


def lie_derivative_g(F: FundamentalTensor) -> np.ndarray:
    """``(L_xi g)(x, y) = -F(x, phi y, xi) - F(y, phi x, xi)``."""
    M = _xphi_xi(F)
    return -M - M.T


def d_eta(F: FundamentalTensor):
    """``d eta`` and its ``(l1, l3)`` parts; the vertical-vertical part is zero."""
    M = _xphi_xi(F)
    de = -M + M.T
    l1, _, l3 = ell_split(de, F.s)
    return de, l1, l3


@dataclass(frozen=True, eq=False)
class NijenhuisBundle:
    """``N1`` is (0,3), ``N2``/``N3`` are (0,2), ``N4`` is a covector."""

    N1: np.ndarray
    N2: np.ndarray
    N3: np.ndarray
    N4: np.ndarray

    def norms(self, model) -> dict:
        return {
            "N1": cubic_norm(self.N1, model),
            "N2": tensor_norm(self.N2, model),
            "N3": tensor_norm(self.N3, model),
            "N4": tensor_norm(self.N4, model),
        }


# the associated tensors share the same shapes
AssocNijenhuisBundle = NijenhuisBundle


def _swap12(T):
    return np.einsum("bac->abc", T)


def nijenhuis(F: FundamentalTensor) -> NijenhuisBundle:
    s = F.s
    T, phi, xi, eta = F.F, s.phi, s.xi, s.eta
    first = pull(T, phi, None, None)  # F(phi x, y, z)
    last = pull(T, None, None, phi)  # F(x, y, phi z)
    M = _xphi_xi(F)
    N1 = first - _swap12(first) - last + _swap12(last) + np.einsum("c,ab->abc", eta, M - M.T)
    A = pull(T, None, None, xi)  # F(x, y, xi)
    B = pull(T, phi, phi, xi)  # F(phi x, phi y, xi)
    N2 = -A + A.T - B + B.T
    N3 = pull(T, xi, None, None) - A + B
    N4 = -pull(T, xi, xi, phi)
    return NijenhuisBundle(N1, N2, N3, N4)


def assoc_nijenhuis(F: FundamentalTensor) -> NijenhuisBundle:
    s = F.s
    T, phi, xi, eta = F.F, s.phi, s.xi, s.eta
    first = pull(T, phi, None, None)
    last = pull(T, None, None, phi)
    M = _xphi_xi(F)
    N1 = first + _swap12(first) - last - _swap12(last) + np.einsum("c,ab->abc", eta, M + M.T)
    A = pull(T, None, None, xi)
    B = pull(T, phi, phi, xi)
    N2 = -A - A.T - B - B.T
    N3 = pull(T, xi, None, None) + A - B
    N4 = -pull(T, xi, phi, xi)
    return NijenhuisBundle(N1, N2, N3, N4)


def nijenhuis_relations(N: NijenhuisBundle, s: ApapStructure) -> dict:
    """Defects of the identities linking N^(2), N^(3), N^(4) to N^(1)."""
    phi, xi, eta = s.phi, s.xi, s.eta
    # eta(N(u, v)) = N(u, v, xi) for the lowered tensor since g(., xi) = eta
    n2 = -pull(N.N1, None, phi, xi) - np.einsum("a,b->ab", pull(N.N1, phi, xi, xi), eta)
    n3 = -pull(N.N1, phi, xi, None)
    return {
        "N2": N.N2 - n2,
        "N3": N.N3 - n3,
        "N4_from_N2": N.N4 + pull(N.N2, phi, xi),
        "N4_from_N3": N.N4 + pull(N.N3, phi, xi),
    }


def assoc_relations(N: NijenhuisBundle, s: ApapStructure) -> dict:
    phi, xi, eta = s.phi, s.xi, s.eta
    n2 = -pull(N.N1, None, phi, xi) - np.einsum("a,b->ab", pull(N.N1, phi, xi, xi), eta)
    n3 = pull(N.N1, phi, xi, None) - np.einsum("a,b->ab", eta, pull(N.N1, xi, xi, phi))
    return {
        "N2": N.N2 - n2,
        "N3": N.N3 - n3,
        "N4_from_eta": N.N4 + pull(N.N1, None, xi, xi),
        "N4_half_xixi": N.N4 - 0.5 * pull(N.N1, xi, xi, None),
        "N4_from_N2": N.N4 - pull(N.N2, phi, xi),
        "N4_from_N3": N.N4 + pull(N.N3, phi, xi),
    }


def symmetry_identities(N1: np.ndarray, s: ApapStructure) -> dict:
    """Defects of the six phi-symmetry identities of a Nijenhuis-type (0,3) tensor."""
    p, h, xi = s.phi, s.h, s.xi
    return {
        "h_p_p": pull(N1, h, p, p) + pull(N1, h, h, h),
        "h_h_h": pull(N1, h, h, h) - pull(N1, p, p, h),
        "x_h_h": pull(N1, None, h, h) + pull(N1, None, p, p),
        "h_h_z": pull(N1, h, h, None) - pull(N1, p, p, None),
        "xi_p_p": pull(N1, xi, p, p) + pull(N1, xi, h, h),
        "p_p_xi": pull(N1, p, p, xi) - pull(N1, h, h, xi),
    }


def omega_identity(F: FundamentalTensor, hN: NijenhuisBundle) -> np.ndarray:
    """Defect of ``omega(z) = -1/2 N^(xi, xi, phi z)``."""
    s = F.s
    omega = pull(F.F, s.xi, s.xi, None)
    return omega + 0.5 * pull(hN.N1, s.xi, s.xi, s.phi)


def phi_brackets(conn: Connection | None, s: ApapStructure):
    """``[phi, phi]`` and ``{phi, phi}`` as (1,2) arrays ``T[a, b, k]``.

    Brackets and braces are built from the torsion-free connection:
    ``[x, y] = nabla_x y - nabla_y x`` and ``{x, y} = nabla_x y + nabla_y x``.
    """
    if conn is None:
        raise ModeUnsupported("phi brackets need a connection")
    G = conn.gamma
    phi, h = s.phi, s.h

    def torsion_like(K):
        return (
            np.einsum("pa,qb,pqk->abk", phi, phi, K)
            + np.einsum("kl,abl->abk", h, K)
            - np.einsum("kl,pa,pbl->abk", phi, phi, K)
            - np.einsum("kl,qb,aql->abk", phi, phi, K)
        )

    return torsion_like(G - G.transpose(1, 0, 2)), torsion_like(G + G.transpose(1, 0, 2))


def bracket_nijenhuis(conn: Connection, s: ApapStructure):
    """``N`` and ``N^`` (lowered) from the bracket definitions, independent of F."""
    pp, braces = phi_brackets(conn, s)
    nabla_eta, _ = nabla_eta_xi(conn, s)
    de = nabla_eta - nabla_eta.T
    lie = nabla_eta + nabla_eta.T
    N = np.einsum("abl,lk->abk", pp - np.einsum("ab,k->abk", de, s.xi), s.g)
    hN = np.einsum("abl,lk->abk", braces - np.einsum("ab,k->abk", lie, s.xi), s.g)
    return N, hN


def reconstruct_F(N: NijenhuisBundle, hN: NijenhuisBundle, s: ApapStructure) -> np.ndarray:
    """Recover F from the pair (N, N^)."""
    phi, xi, eta = s.phi, s.xi, s.eta
    S = N.N1 + hN.N1
    P = pull(S, phi, None, None)
    part1 = 0.25 * (P + P.transpose(0, 2, 1))
    part2 = pull(S, xi, None, phi) + np.einsum("b,c->bc", pull(hN.N1, xi, xi, phi), eta)
    return part1 - 0.5 * np.einsum("a,bc->abc", eta, part2)


@dataclass(frozen=True)
class Predicate:
    holds: bool | None
    residual: float | None

    def as_dict(self) -> dict:
        return {"holds": self.holds, "residual": self.residual}


_UNKNOWN = Predicate(None, None)


@dataclass(frozen=True)
class PredicateReport:
    normal: Predicate
    paracontact: Predicate
    para_sasakian: Predicate
    killing_xi: Predicate
    eta_closed: Predicate
    H_involutive: Predicate
    xi_geodesic: Predicate
    phi_integrable: Predicate
    notes: tuple = ()

    def as_dict(self) -> dict:
        out = {
            name: getattr(self, name).as_dict()
            for name in (
                "normal",
                "paracontact",
                "para_sasakian",
                "killing_xi",
                "eta_closed",
                "H_involutive",
                "xi_geodesic",
                "phi_integrable",
            )
        }
        out["notes"] = list(self.notes)
        return out


def predicates(F: FundamentalTensor, conn: Connection | None = None, tol=TOL_CLASS):
    s = F.s
    model = s.model
    normF = F.norm
    scale = tol * max(1.0, normF)

    def pred(residual, threshold=scale):
        return Predicate(bool(residual <= threshold), float(residual))

    N = nijenhuis(F)
    lie = lie_derivative_g(F)
    de, l1, l3 = d_eta(F)
    notes = []

    para_sasakian = _UNKNOWN
    phi_integrable = _UNKNOWN
    if conn is not None:
        nabla_eta, _ = nabla_eta_xi(conn, s)
        g_phi = s.phi.T @ s.g  # g(phi x, y)
        ps_res = tensor_norm(nabla_eta - g_phi, model)
        para_sasakian = pred(ps_res, tol * max(1.0, tensor_norm(nabla_eta, model)))
        # F route: g(nabla_x xi, y) = -F(x, phi y, xi)
        f_route = tensor_norm(-_xphi_xi(F) - g_phi, model) <= scale
        if f_route != para_sasakian.holds:
            notes.append("para-Sasakian: connection and F routes disagree")
        f4p = classify(F, tol).is_F4_prime
        if f4p != para_sasakian.holds:
            notes.append(
                "para-Sasakian condition and F4' membership differ "
                "(components outside the xi-slot classes are unconstrained by nabla xi = phi)"
            )
        pp, _ = phi_brackets(conn, s)
        pp_low = np.einsum("abl,lk->abk", pp, s.g)
        phi_integrable = pred(cubic_norm(pp_low, model))

    return PredicateReport(
        normal=pred(cubic_norm(N.N1, model)),
        paracontact=pred(tensor_norm(2 * s.g @ s.phi - lie, model)),
        para_sasakian=para_sasakian,
        killing_xi=pred(tensor_norm(lie, model)),
        eta_closed=pred(tensor_norm(de, model)),
        H_involutive=pred(tensor_norm(l1, model)),
        xi_geodesic=pred(tensor_norm(l3, model)),
        phi_integrable=phi_integrable,
        notes=tuple(notes),
    )


def f4_prime_sample(s: ApapStructure) -> FundamentalTensor:
    return FundamentalTensor(f4_prime_tensor(s), s)
