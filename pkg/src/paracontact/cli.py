"""``paracontact`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 validation failure,
3 parse error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import report as rp
from .classes import CLASS_INDICES, subspace_dim_formula, subspace_dims_numeric
from .errors import BadN
from .frame import TOL_CLASS, FrameModel
from .gallery import paracomplex_swap
from .structure import ApapStructure
from .verify import DEFAULT_TOL, run_all

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_PARSE = 0, 1, 2, 3


def _emit(payload: dict, fmt: str, text_view, out) -> None:
    if fmt == "json":
        out.write(rp.dumps(payload) + "\n")
    else:
        out.write(text_view(payload))


def _fmt_num(x) -> str:
    return "-" if x is None else f"{x:.3e}"


def _text_report(r: dict) -> str:
    lines = [f"mode {r['mode']}  dim {r['dim']}  n {r['n']}"]
    st = r["structure"]
    lines.append(f"structure valid: {st['valid']}  worst residual {_fmt_num(st['worst'])}")
    conn = r["connection"]
    if conn is None:
        lines.append("connection: not available (raw F input)")
    else:
        lines.append(
            "connection: jacobi {}  torsion {}  metric {}".format(
                _fmt_num(conn["jacobi_residual"]),
                _fmt_num(conn["torsion_residual"]),
                _fmt_num(conn["metric_residual"]),
            )
        )
    lines.append(f"|F| = {r['F']['norm']:.6g}")
    if r["F"]["dim3"] is not None:
        lines.append(
            "  " + "  ".join(f"{k}={v:.6g}" for k, v in sorted(r["F"]["dim3"].items()))
        )
    cls = r["classification"]
    lines.append(f"class: {' + '.join(cls['classes'])}")
    lines.append(f"  theta(xi)={cls['theta_xi']:.6g}  theta*(xi)={cls['theta_star_xi']:.6g}")
    lines.append("  component norms:")
    for name in (f"F{i}" for i in CLASS_INDICES):
        lines.append(f"    {name:<4} {cls['norms'][name]:.6e}")
    for key, label in (("nijenhuis", "N"), ("assoc_nijenhuis", "N^")):
        norms = r[key]["norms"]
        lines.append(
            f"{label} norms: " + "  ".join(f"{k}={norms[k]:.3e}" for k in sorted(norms))
        )
    lines.append("predicates:")
    preds = r["predicates"]
    for name in sorted(k for k in preds if k != "notes"):
        p = preds[name]
        holds = "n/a" if p["holds"] is None else str(p["holds"]).lower()
        lines.append(f"  {name:<15} {holds:<6} residual {_fmt_num(p['residual'])}")
    for note in r["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _invalid(exc: rp.ValidationFailure, fmt: str, err) -> int:
    if fmt == "json":
        sys.stdout.write(rp.dumps({"error": str(exc), **exc.details}) + "\n")
    else:
        err.write(f"validation failed: {exc}\n")
        for name, value in exc.details.get("structure", {}).get("residuals", {}).items():
            err.write(f"  {name:<12} {value:.3e}\n")
    return EXIT_INVALID


def _run_model(source: dict, args) -> int:
    try:
        result = rp.run_pipeline(source, tol=args.tol, full_tensors=args.full_tensors)
    except rp.ValidationFailure as exc:
        return _invalid(exc, args.format, sys.stderr)
    _emit(result, args.format, _text_report, sys.stdout)
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        source = rp.load_model(args.path)
    except rp.ModelParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    return _run_model(source, args)


def cmd_example(args) -> int:
    a = list(args.a)
    n = args.n if args.n is not None else len(a) // 2
    if n < 1 or len(a) != 2 * n:
        sys.stderr.write(f"parse error: need 2n parameters, got {len(a)} for n={n}\n")
        return EXIT_PARSE
    return _run_model({"mode": "example", "n": n, "a": a}, args)


def dims_table(n: int) -> dict:
    """Formula and numeric subspace dimensions for every class plus the total."""
    subspace_dim_formula(n, 1)  # raises BadN
    dim = 2 * n + 1
    e0 = [1.0] + [0.0] * (dim - 1)
    s = ApapStructure(FrameModel.orthonormal(dim), paracomplex_swap(n), e0, e0)
    ranks = subspace_dims_numeric(s)
    rows = []
    for i in CLASS_INDICES:
        f = subspace_dim_formula(n, i)
        rows.append({"class": f"F{i}", "formula": f, "numeric": ranks.per_class[i], "ok": f == ranks.per_class[i]})
    total = sum(r["formula"] for r in rows)
    rows.append({"class": "total", "formula": total, "numeric": ranks.total, "ok": total == ranks.total})
    return {"n": n, "rows": rows, "ok": all(r["ok"] for r in rows)}


def _text_dims(t: dict) -> str:
    lines = [f"n = {t['n']}", f"{'class':<6} {'formula':>8} {'numeric':>8}"]
    for r in t["rows"]:
        verdict = "PASS" if r["ok"] else "FAIL"
        lines.append(f"{r['class']:<6} {r['formula']:>8} {r['numeric']:>8}  {verdict}")
    return "\n".join(lines) + "\n"


def cmd_dims(args) -> int:
    try:
        table = dims_table(args.n)
    except BadN as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_INVALID
    _emit(table, args.format, _text_dims, sys.stdout)
    return EXIT_OK if table["ok"] else EXIT_VERIFY


def _text_verify(v: dict) -> str:
    lines = []
    for s in v["suites"]:
        verdict = "PASS" if s["ok"] else "FAIL"
        lines.append(f"{verdict}  {s['name']:<24} {s['passed']:>5}/{s['total']:<5} worst {s['worst']:.3e}")
        lines.extend(f"      {f}" for f in s["failures"])
    lines.append(f"{'ALL PASS' if v['ok'] else 'FAILURES'}  worst residual {v['worst']:.3e}  tol {v['tol']:.1e}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    start = time.perf_counter()
    suites = run_all(seeds=args.seeds, dims=tuple(args.dims), tol=args.tol)
    summary = {
        "tol": args.tol,
        "seeds": args.seeds,
        "dims": list(args.dims),
        "suites": [s.as_dict() for s in suites],
        "worst": max(s.worst for s in suites),
        "ok": all(s.ok for s in suites),
    }
    _emit(summary, args.format, _text_verify, sys.stdout)
    if args.format == "text":
        sys.stdout.write(f"elapsed {time.perf_counter() - start:.2f} s\n")
    return EXIT_OK if summary["ok"] else EXIT_VERIFY


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _odd_dim(text):
    value = int(text)
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"dimension must be odd and >= 3, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paracontact",
        description="Classify almost paracontact almost paracomplex Riemannian structures.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    report_opts = argparse.ArgumentParser(add_help=False, parents=[common])
    report_opts.add_argument("--tol", type=float, default=TOL_CLASS, help="relative class tolerance")
    report_opts.add_argument("--full-tensors", action="store_true", help="include full arrays")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[report_opts], help="run the pipeline on a model file")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("example", parents=[report_opts], help="run the pipeline on the Lie group family")
    p.add_argument("a", type=float, nargs="+", help="parameters a_1 .. a_2n")
    p.add_argument("--n", type=_positive_int, default=None, help="defaults to len(a) / 2")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("dims", parents=[common], help="subspace dimensions: formula vs numeric rank")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", parents=[common], help="run the built-in verification suites")
    p.add_argument("--seeds", type=_positive_int, default=5)
    p.add_argument("--dims", type=_odd_dim, nargs="+", default=[3, 5])
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are parse errors here
        return EXIT_PARSE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
