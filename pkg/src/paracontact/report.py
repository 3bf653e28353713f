"""Model files and the classify pipeline behind the CLI.

A model file is a JSON object in one of three modes::

    {"mode": "example", "n": 1, "a": [1, 1]}
    {"mode": "lie", "dim": 3, "g": [[...]], "phi": [[...]], "xi": [...],
     "eta": [...], "structure_constants": [{"i": 0, "j": 1, "k": 1, "value": -1}]}
    {"mode": "raw_f", "dim": 3, "g": ..., "phi": ..., "xi": ..., "eta": ...,
     "F_components": [[[...]]]}

Arrays are row-major; ``phi[k][l]`` is the k-th component of ``phi e_l``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import classes as fc
from . import torsion as nj
from .errors import GeometryError
from .frame import TOL_CLASS, FrameModel
from .gallery import LieExample, build, expected_class
from .lie import LieAlgebraModel, levi_civita, nabla_eta_xi, nabla_phi
from .structure import ApapStructure, validate_structure

MODES = ("example", "lie", "raw_f")


class ModelParseError(ValueError):
    """Malformed model file; ``location`` names the line or field."""

    def __init__(self, message, location=None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ValidationFailure(GeometryError):
    """Well-formed input describing an invalid structure."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


def load_model(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelParseError(str(exc), str(path)) from exc
    return parse_model(text)


def parse_model(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise ModelParseError("top level must be a JSON object")
    mode = data.get("mode")
    if mode not in MODES:
        raise ModelParseError(f"mode must be one of {MODES}, got {mode!r}", "field 'mode'")
    extra = set(data) - _ALLOWED[mode]
    if extra:
        raise ModelParseError(f"unexpected fields {sorted(extra)} for mode {mode!r}")
    if mode == "example":
        n = _integer(data, "n")
        a = _array(data, "a", (2 * n,))
        return {"mode": mode, "n": n, "a": a}
    dim = _integer(data, "dim")
    model = {
        "mode": mode,
        "dim": dim,
        "g": _array(data, "g", (dim, dim)),
        "phi": _array(data, "phi", (dim, dim)),
        "xi": _array(data, "xi", (dim,)),
        "eta": _array(data, "eta", (dim,)),
    }
    if mode == "lie":
        model["structure_constants"] = _brackets(data, dim)
    else:
        model["F_components"] = _array(data, "F_components", (dim, dim, dim))
    return model


_COMMON = {"mode", "dim", "g", "phi", "xi", "eta"}
_ALLOWED = {
    "example": {"mode", "n", "a"},
    "lie": _COMMON | {"structure_constants"},
    "raw_f": _COMMON | {"F_components"},
}


def _integer(data, key) -> int:
    if key not in data:
        raise ModelParseError("missing", f"field '{key}'")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ModelParseError(f"must be a positive integer, got {value!r}", f"field '{key}'")
    return value


def _array(data, key, shape) -> np.ndarray:
    if key not in data:
        raise ModelParseError("missing", f"field '{key}'")
    try:
        arr = np.array(data[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ModelParseError(f"not a numeric array ({exc})", f"field '{key}'") from exc
    if arr.shape != shape:
        raise ModelParseError(f"expected shape {shape}, got {arr.shape}", f"field '{key}'")
    if not np.all(np.isfinite(arr)):
        raise ModelParseError("contains non-finite numbers", f"field '{key}'")
    return arr


def _brackets(data, dim) -> list:
    key = "structure_constants"
    raw = data.get(key)
    if not isinstance(raw, list):
        raise ModelParseError("must be a list of {i, j, k, value}", f"field '{key}'")
    out = []
    for pos, entry in enumerate(raw):
        where = f"field '{key}[{pos}]'"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "k", "value"}:
            raise ModelParseError("entries need exactly i, j, k, value", where)
        i, j, k, value = entry["i"], entry["j"], entry["k"], entry["value"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j, k)):
            raise ModelParseError("i, j, k must be integers", where)
        if not (0 <= i < j < dim and 0 <= k < dim):
            raise ModelParseError(f"need 0 <= i < j < {dim} and 0 <= k < {dim}", where)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ModelParseError("value must be a finite number", where)
        out.append((i, j, k, float(value)))
    return out


def _tolist(a):
    return np.asarray(a, dtype=float).tolist()


def _family_note(ex: LieExample, members) -> str:
    if ex.n != 1:
        return "Lie group family with n > 1: no closed-form class prediction to compare against"
    expected = expected_class(ex)
    label = "+".join(f"F{i}" for i in sorted(expected)) or "F0"
    a1, a2 = ex.a
    if set(members) == expected:
        return f"n=1 family (a1={a1:g}, a2={a2:g}): class {label} as expected"
    return f"n=1 family (a1={a1:g}, a2={a2:g}): MISMATCH, expected {label}"


def build_structure(source: dict):
    """Return ``(structure, connection or None, algebra or None, example or None)``."""
    if source["mode"] == "example":
        ex = LieExample(source["n"], tuple(source["a"]))
        alg, s, model = build(ex)
        return s, levi_civita(alg, model), alg, ex
    model = FrameModel(source["g"])
    s = ApapStructure(model, source["phi"], source["xi"], source["eta"])
    report = validate_structure(s)
    if not report.valid:
        raise ValidationFailure(
            "structure axioms fail", {"structure": report.as_dict()}
        )
    if source["mode"] == "lie":
        alg = LieAlgebraModel.from_brackets(s.dim, source["structure_constants"])
        return s, levi_civita(alg, model), alg, None
    return s, None, None, None


def run_pipeline(source: dict, tol=TOL_CLASS, full_tensors=False) -> dict:
    """validate -> connect -> F -> classify -> Nijenhuis -> predicates."""
    try:
        s, conn, alg, ex = build_structure(source)
        if conn is not None:
            F = fc.compute_F(nabla_phi(conn, s), s)
        else:
            F = fc.FundamentalTensor(source["F_components"], s).check()
        cls = fc.classify(F, tol)
    except ValidationFailure:
        raise
    except GeometryError as exc:
        details = {}
        if getattr(exc, "report", None) is not None:
            details["structure"] = exc.report.as_dict()
        raise ValidationFailure(f"{type(exc).__name__}: {exc}", details) from exc

    model = s.model
    lee = fc.lee_forms(F)
    N = nj.nijenhuis(F)
    hN = nj.assoc_nijenhuis(F)
    preds = nj.predicates(F, conn, tol)

    out = {
        "mode": source["mode"],
        "dim": s.dim,
        "n": s.n,
        "structure": validate_structure(s).as_dict(),
        "connection": None,
        "F": {"norm": F.norm, "components": _tolist(F.F), "dim3": None},
        "lee_forms": {
            "theta": _tolist(lee.theta),
            "theta_star": _tolist(lee.theta_star),
            "omega": _tolist(lee.omega),
        },
        "classification": cls.as_dict(),
        "nijenhuis": {"norms": N.norms(model)},
        "assoc_nijenhuis": {"norms": hN.norms(model)},
        "predicates": preds.as_dict(),
        "notes": [],
    }
    if conn is not None:
        nabla_eta, _ = nabla_eta_xi(conn, s)
        out["connection"] = {
            "jacobi_residual": alg.jacobi_residual()[0],
            "torsion_residual": conn.torsion_residual(alg),
            "metric_residual": conn.metric_residual(model),
            "nabla_eta": _tolist(nabla_eta),
        }
        if full_tensors:
            out["connection"]["gamma"] = _tolist(conn.gamma)
    try:
        out["F"]["dim3"] = fc.dim3_components(F).as_dict()
    except GeometryError:
        pass
    if full_tensors:
        for key, bundle in (("nijenhuis", N), ("assoc_nijenhuis", hN)):
            out[key].update({name: _tolist(getattr(bundle, name)) for name in ("N1", "N2", "N3", "N4")})
        comps = fc.components(F, lee)
        out["F"]["class_components"] = {f"F{i}": _tolist(c) for i, c in comps.items()}
    if ex is not None:
        out["example"] = {"n": ex.n, "a": list(ex.a)}
        out["notes"].append(_family_note(ex, cls.members))
    out["notes"].extend(preds.notes)
    return out


def dumps(report: dict) -> str:
    # float repr is the shortest string that round-trips exactly
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False)


def loads(text: str) -> dict:
    return json.loads(text)
