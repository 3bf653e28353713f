"""Built-in verification suites.

Each suite draws a seeded corpus, checks one family of identities and
reports the number of passing cases together with the worst relative
residual.  ``run_all`` backs the ``verify`` command of the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import itertools
import time

import numpy as np

from . import classes as fc
from . import torsion as nj
from .frame import cubic_inner, cubic_norm, pull, tensor_norm
from .gallery import LieExample, build, expected_class, random_structure
from .lie import levi_civita, nabla_eta_xi, nabla_phi
from .structure import associated_metric, ell_split, signature

DEFAULT_TOL = 1e-10


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    worst: float = 0.0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def record(self, label, residual, tol):
        residual = float(residual)
        self.total += 1
        self.worst = max(self.worst, residual)
        if residual <= tol:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(f"{label}: {residual:.3e}")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "passed": self.passed,
            "total": self.total,
            "worst": self.worst,
            "failures": list(self.failures),
        }


def _rel(diff, ref, model) -> float:
    """g-norm of ``diff`` relative to ``max(1, |ref|)``."""
    return tensor_norm(diff, model) / max(1.0, tensor_norm(ref, model))


# -- closed forms for the Nijenhuis tensors on pure classes -------------------


def _terms(F: fc.FundamentalTensor, lee: fc.LeeForms | None = None):
    s = F.s
    lee = lee or fc.lee_forms(F)
    T, p, h, xi, eta = F.F, s.phi, s.h, s.xi, s.eta
    return {
        "T": T,
        "p": p,
        "h": h,
        "xi": xi,
        "eta": eta,
        "g_p": s.g @ p,
        "g_pp": p.T @ s.g @ p,
        "x_py_xi": pull(T, None, p, xi),  # F(x, phi y, xi)
        "x_y_xi": pull(T, None, None, xi),  # F(x, y, xi)
        "xi_x_y": pull(T, xi, None, None),  # F(xi, x, y)
        "xi_y_pz": pull(T, xi, None, p),  # F(xi, y, phi z)
        "ppp": pull(T, p, p, p),
        "hhp": pull(T, h, h, p),
        "omega": lee.omega,
        "om_p": lee.omega @ p,
        "theta": lee.theta,
        "th_xi": float(lee.theta @ xi),
        "ths_xi": float(lee.theta_star @ xi),
    }


def _zeros(dim):
    return [np.zeros((dim,) * 3), np.zeros((dim, dim)), np.zeros((dim, dim)), np.zeros(dim)]


def pure_class_nijenhuis(F: fc.FundamentalTensor, i: int):
    """(N1, N2, N3, N4) predicted for a tensor of the single class ``i``."""
    t = _terms(F)
    eta = t["eta"]
    out = _zeros(F.s.dim)
    e = np.einsum
    if i == 3:
        out[0] = -2 * (t["ppp"] + t["hhp"])
    elif i == 7:
        out[0] = 4 * e("ab,c->abc", t["x_py_xi"], eta)
        out[1] = -4 * t["x_y_xi"]
    elif i in (8, 9):
        M = t["x_py_xi"]  # (y, z) -> F(y, phi z, xi)
        out[0] = 2 * (e("a,bc->abc", eta, M) - e("b,ac->abc", eta, M))
        out[2] = -2 * t["x_y_xi"]
    elif i == 10:
        M = t["xi_y_pz"]
        out[0] = -e("a,bc->abc", eta, M) + e("b,ac->abc", eta, M)
        out[2] = t["xi_x_y"]
    elif i == 11:
        om, om_p = t["omega"], t["om_p"]
        out[0] = e("c,a,b->abc", eta, eta, om_p) - e("c,b,a->abc", eta, eta, om_p)
        out[1] = np.outer(om, eta) - np.outer(eta, om)
        out[2] = np.outer(om, eta)
        out[3] = -om_p
    return out


def pure_class_assoc_nijenhuis(F: fc.FundamentalTensor, i: int):
    """(N^1, N^2, N^3, N^4) predicted for a tensor of the single class ``i``."""
    t = _terms(F)
    eta, n = t["eta"], F.s.n
    out = _zeros(F.s.dim)
    e = np.einsum
    if i == 1:
        th_h, th_p = t["theta"] @ t["h"], t["theta"] @ t["p"]
        out[0] = 2 / n * (e("ab,c->abc", t["g_p"], th_h) - e("ab,c->abc", t["g_pp"], th_p))
    elif i == 2:
        out[0] = -2 * (t["ppp"] + t["hhp"])
    elif i == 4:
        out[0] = 2 / n * t["th_xi"] * e("ab,c->abc", t["g_p"], eta)
        out[1] = -2 / n * t["th_xi"] * t["g_pp"]
    elif i == 5:
        out[0] = 2 / n * t["ths_xi"] * e("ab,c->abc", t["g_pp"], eta)
        out[1] = -2 / n * t["ths_xi"] * t["g_p"]
    elif i == 6:
        out[0] = 4 * e("ab,c->abc", t["x_py_xi"], eta)
        out[1] = -4 * t["x_y_xi"]
    elif i in (8, 9):
        M = t["x_py_xi"]
        out[0] = -2 * (e("a,bc->abc", eta, M) + e("b,ac->abc", eta, M))
        out[2] = 2 * t["x_y_xi"]
    elif i == 10:
        M = t["xi_y_pz"]
        out[0] = -e("a,bc->abc", eta, M) - e("b,ac->abc", eta, M)
        out[2] = t["xi_x_y"]
    elif i == 11:
        om, om_p = t["omega"], t["om_p"]
        out[0] = (
            e("c,a,b->abc", eta, eta, om_p)
            + e("c,b,a->abc", eta, eta, om_p)
            - 2 * e("a,b,c->abc", eta, eta, om_p)
        )
        out[1] = -np.outer(eta, om) - np.outer(om, eta)
        out[2] = np.outer(om, eta) + 2 * np.outer(eta, om)
        out[3] = -om_p
    return out


def smallest_n(i: int) -> int:
    return 1 if fc.subspace_dim_formula(1, i) > 0 else 2


# -- corpora ----------------------------------------------------------------


def corpus(dims, seeds):
    """Yield ``(label, structure, F)`` over random structures and tensors."""
    for dim in dims:
        for seed in range(seeds):
            s, _ = random_structure(dim, 1000 + seed)
            yield f"dim{dim}/seed{seed}", s, fc.random_F(s, seed)


def _bundle_arrays(b):
    return [b.N1, b.N2, b.N3, b.N4]


# -- suites -----------------------------------------------------------------


def suite_structures(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("structure identities")
    for dim in dims:
        for seed in range(seeds):
            s, model = random_structure(dim, 1000 + seed)
            g = s.g
            eta_eta = np.outer(s.eta, s.eta)
            l1, l2, l3 = ell_split(g, s)
            res.record(f"l1(g) dim{dim}/{seed}", _rel(l1 - (g - eta_eta), g, model), tol)
            res.record(f"l2(g) dim{dim}/{seed}", _rel(l2 - eta_eta, g, model), tol)
            res.record(f"l3(g) dim{dim}/{seed}", _rel(l3, g, model), tol)
            gt = associated_metric(s)
            t1, t2, t3 = ell_split(gt, s)
            res.record(f"l1(g~) dim{dim}/{seed}", _rel(t1 - (gt - eta_eta), gt, model), tol)
            res.record(f"l2(g~) dim{dim}/{seed}", _rel(t2 - eta_eta, gt, model), tol)
            res.record(f"l3(g~) dim{dim}/{seed}", _rel(t3, gt, model), tol)
            res.record(f"g~ symmetric dim{dim}/{seed}", _rel(gt - gt.T, gt, model), tol)
            sig_ok = signature(gt, model) == (s.n + 1, s.n)
            res.record(f"signature dim{dim}/{seed}", 0.0 if sig_ok else np.inf, tol)
    return res


def suite_symmetry(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("symmetry projector")
    for label, s, F in corpus(dims, seeds):
        scale = max(1.0, float(np.max(np.abs(F.F))))
        res.record(label, max(F.symmetry_residuals()) / scale, tol)
    return res


def suite_decomposition(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("decomposition")
    for label, s, F in corpus(dims, seeds):
        model = s.model
        normF = F.norm
        comps = fc.components(F)
        total = sum(comps.values())
        res.record(f"{label} completeness", cubic_norm(F.F - total, model) / max(1.0, normF), tol)
        norms = {i: cubic_norm(c, model) for i, c in comps.items()}
        live = [i for i in fc.CLASS_INDICES if norms[i] > fc.TOL_CLASS * max(1.0, normF)]
        for i, j in itertools.combinations(live, 2):
            ip = abs(cubic_inner(comps[i], comps[j], model)) / (norms[i] * norms[j])
            res.record(f"{label} <F{i},F{j}>", ip, tol)
        for i in fc.CLASS_INDICES:
            sub = fc.components(fc.FundamentalTensor(comps[i], s))
            res.record(
                f"{label} idempotent F{i}",
                cubic_norm(sub[i] - comps[i], model) / max(1.0, normF),
                tol,
            )
            others = sum(cubic_norm(sub[j], model) for j in fc.CLASS_INDICES if j != i)
            res.record(f"{label} annihilate F{i}", others / max(1.0, normF), tol)
    return res


def suite_lee(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("Lee forms")
    for label, s, F in corpus(dims, seeds):
        lee = fc.lee_forms(F)
        scale = max(1.0, F.norm)
        res.record(f"{label} omega(xi)", abs(lee.omega @ s.xi) / scale, tol)
        d = lee.theta_star @ s.phi + lee.theta @ s.h
        res.record(f"{label} theta*phi", tensor_norm(d, s.model) / scale, tol)
        hN = nj.assoc_nijenhuis(F)
        res.record(f"{label} omega from N^", tensor_norm(nj.omega_identity(F, hN), s.model) / scale, tol)
    return res


def suite_relations(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("Nijenhuis relations")
    for label, s, F in corpus(dims, seeds):
        model = s.model
        scale = max(1.0, F.norm)
        N, hN = nj.nijenhuis(F), nj.assoc_nijenhuis(F)
        res.record(f"{label} N antisym", cubic_norm(N.N1 + N.N1.transpose(1, 0, 2), model) / scale, tol)
        res.record(f"{label} N^ sym", cubic_norm(hN.N1 - hN.N1.transpose(1, 0, 2), model) / scale, tol)
        for key, d in nj.nijenhuis_relations(N, s).items():
            res.record(f"{label} N {key}", tensor_norm(d, model) / scale, tol)
        for key, d in nj.assoc_relations(hN, s).items():
            res.record(f"{label} N^ {key}", tensor_norm(d, model) / scale, tol)
        for key, d in nj.symmetry_identities(N.N1, s).items():
            res.record(f"{label} N {key}", tensor_norm(d, model) / scale, tol)
        for key, d in nj.symmetry_identities(hN.N1, s).items():
            res.record(f"{label} N^ {key}", tensor_norm(d, model) / scale, tol)
    return res


def suite_roundtrip(dims, seeds, tol) -> SuiteResult:
    res = SuiteResult("F from (N, N^)")
    for label, s, F in corpus(dims, seeds):
        back = nj.reconstruct_F(nj.nijenhuis(F), nj.assoc_nijenhuis(F), s)
        res.record(label, cubic_norm(back - F.F, s.model) / max(1.0, F.norm), tol)
    return res


def suite_pure_classes(seeds, tol) -> SuiteResult:
    res = SuiteResult("pure-class Nijenhuis")
    for i in fc.CLASS_INDICES:
        dim = 2 * smallest_n(i) + 1
        for seed in range(seeds):
            s, model = random_structure(dim, 2000 + seed)
            F = fc.pure_class_sample(s, i, seed)
            scale = max(1.0, F.norm)
            got1 = _bundle_arrays(nj.nijenhuis(F))
            got2 = _bundle_arrays(nj.assoc_nijenhuis(F))
            for k, (a, b) in enumerate(zip(got1, pure_class_nijenhuis(F, i)), start=1):
                res.record(f"F{i} N{k} seed{seed}", tensor_norm(a - b, model) / scale, tol)
            for k, (a, b) in enumerate(zip(got2, pure_class_assoc_nijenhuis(F, i)), start=1):
                res.record(f"F{i} N^{k} seed{seed}", tensor_norm(a - b, model) / scale, tol)
    return res


REGRESSION_GRID = ((1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (-2.0, 3.0))


def expected_connection(a1, a2) -> np.ndarray:
    G = np.zeros((3, 3, 3))
    G[1, 0, 1], G[1, 0, 2] = a1, a2
    G[2, 0, 1], G[2, 0, 2] = a2, -a1
    G[1, 1, 0], G[2, 2, 0] = -a1, a1
    G[1, 2, 0], G[2, 1, 0] = -a2, -a2
    return G


def expected_F(a1, a2) -> np.ndarray:
    F = np.zeros((3, 3, 3))
    for idx in [(1, 0, 1), (1, 1, 0), (2, 0, 2), (2, 2, 0)]:
        F[idx] = -a2
    for idx in [(1, 0, 2), (1, 2, 0)]:
        F[idx] = -a1
    for idx in [(2, 0, 1), (2, 1, 0)]:
        F[idx] = a1
    return F


def suite_example(tol) -> SuiteResult:
    """Lie group family at n = 1: connection, F, classes, and F vs bracket routes."""
    res = SuiteResult("Lie group family")
    for a1, a2 in REGRESSION_GRID:
        ex = LieExample(1, (a1, a2))
        alg, s, model = build(ex)
        conn = levi_civita(alg, model)
        label = f"({a1:g},{a2:g})"
        res.record(f"{label} connection", np.max(np.abs(conn.gamma - expected_connection(a1, a2))), tol)
        F = fc.compute_F(nabla_phi(conn, s), s)
        res.record(f"{label} F", np.max(np.abs(F.F - expected_F(a1, a2))), tol)
        members = set(fc.classify(F).members)
        res.record(f"{label} classes", 0.0 if members == expected_class(ex) else np.inf, tol)
        Nb, hNb = nj.bracket_nijenhuis(conn, s)
        res.record(f"{label} N bracket route", np.max(np.abs(nj.nijenhuis(F).N1 - Nb)), tol)
        res.record(f"{label} N^ bracket route", np.max(np.abs(nj.assoc_nijenhuis(F).N1 - hNb)), tol)
        nabla_eta, _ = nabla_eta_xi(conn, s)
        res.record(f"{label} nabla eta", np.max(np.abs(nabla_eta + pull(F.F, None, s.phi, s.xi))), tol)
    for n in (2, 3):
        rng = np.random.default_rng(n)
        ex = LieExample(n, tuple(rng.integers(-3, 4, size=2 * n)))
        alg, s, model = build(ex)
        conn = levi_civita(alg, model)
        res.record(f"n={n} torsion", conn.torsion_residual(alg), tol)
        res.record(f"n={n} metric", conn.metric_residual(model), tol)
        F = fc.compute_F(nabla_phi(conn, s), s)
        Nb, hNb = nj.bracket_nijenhuis(conn, s)
        res.record(f"n={n} N bracket route", np.max(np.abs(nj.nijenhuis(F).N1 - Nb)), tol)
        res.record(f"n={n} N^ bracket route", np.max(np.abs(nj.assoc_nijenhuis(F).N1 - hNb)), tol)
    return res


def suite_dims(ns, tol) -> SuiteResult:
    res = SuiteResult("subspace dimensions")
    for n in ns:
        s, _ = random_structure(2 * n + 1, 77)
        ranks = fc.subspace_dims_numeric(s)
        for i in fc.CLASS_INDICES:
            ok = ranks.per_class[i] == fc.subspace_dim_formula(n, i)
            res.record(f"n={n} F{i}", 0.0 if ok else np.inf, tol)
        expected = sum(fc.subspace_dim_formula(n, i) for i in fc.CLASS_INDICES)
        res.record(f"n={n} total", 0.0 if ranks.total == expected else np.inf, tol)
    return res


def run_all(seeds=5, dims=(3, 5), tol=DEFAULT_TOL) -> list:
    dims = tuple(dims)
    ns = tuple(sorted({(d - 1) // 2 for d in dims}))
    jobs = [
        lambda: suite_structures(dims, seeds, tol),
        lambda: suite_symmetry(dims, seeds, tol),
        lambda: suite_decomposition(dims, seeds, tol),
        lambda: suite_lee(dims, seeds, tol),
        lambda: suite_relations(dims, seeds, tol),
        lambda: suite_roundtrip(dims, seeds, tol),
        lambda: suite_pure_classes(seeds, tol),
        lambda: suite_example(tol),
        lambda: suite_dims(ns, tol),
    ]
    results = []
    for job in jobs:
        t0 = time.perf_counter()
        r = job()
        r.seconds = time.perf_counter() - t0
        results.append(r)
    return results
