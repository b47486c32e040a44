"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage errors (bad flags, unknown operad, unreadable or malformed spec).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import associahedron, bar, counting, operads
from .complexes import homology_dims, verify_complex

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(name: Optional[str], spec: Optional[str]) -> operads.OperadPresentation:
    try:
        if spec is not None:
            try:
                data = Path(spec).read_bytes()
            except OSError as exc:
                raise UsageError(f"cannot read spec {spec}: {exc.strerror}") from None
            return operads.parse_spec(data)
        return operads.builtin(name)
    except operads.SpecError as exc:
        raise UsageError(str(exc)) from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _bound(value: int, name: str, minimum: int = 2):
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}, got {value}")


def _table(rows, fmt: str) -> str:
    if fmt == "json":
        return counting.rows_to_json(rows)
    if fmt == "csv":
        return counting.rows_to_csv(rows)
    if not rows:
        return ""
    cols = list(rows[0])
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.rjust(width[c]) for c in cols)]
    lines += ["  ".join(str(r[c]).rjust(width[c]) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_dims(args) -> int:
    p = _load(args.operad, args.spec)
    _bound(args.max_arity, "--max-arity")
    _emit(_table(counting.dimension_rows(p, args.max_arity), args.format), args.output)
    return EXIT_OK


def cmd_dual(args) -> int:
    p = _load(args.operad, args.spec)
    _emit(operads.dump_spec(operads.quadratic_dual(p)), args.output)
    return EXIT_OK


def cmd_square(args) -> int:
    left = _load(args.left, args.left_spec)
    right = _load(args.right, args.right_spec)
    try:
        q = operads.black_square(left, right)
    except operads.SpecError as exc:
        raise UsageError(str(exc)) from None
    _emit(operads.dump_spec(q), args.output)
    return EXIT_OK


def cmd_bar(args) -> int:
    p = _load(args.operad, args.spec)
    _bound(args.n, "--n")
    b = bar.build_bar(p, args.n)
    c = b.complex
    ok_d2 = verify_complex(c)
    hom = homology_dims(c)
    report = {
        "operad": p.name,
        "n": args.n,
        "degrees": list(c.degrees),
        "dims": c.dims(),
        "homology": hom,
        "d_squared_zero": ok_d2,
        "exact": not any(hom),
    }
    _emit(_dump_json(report), args.json)
    return EXIT_OK if ok_d2 and not any(hom) else EXIT_FAIL


def cmd_koszul(args) -> int:
    p = _load(args.operad, args.spec)
    _bound(args.max_arity, "--max-arity")
    report = bar.koszul_check(p, args.max_arity, workers=args.workers)
    if args.no_timing:
        report["elapsed_ms"] = 0
    _emit(_dump_json(report), args.json)
    return EXIT_OK if report["koszul"] else EXIT_FAIL


def cmd_split(args) -> int:
    _bound(args.n, "--n")
    try:
        operads.builtin(args.kind)
    except operads.SpecError as exc:
        raise UsageError(str(exc)) from None
    try:
        report = associahedron.summand_check(args.kind, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump_json(report), args.json)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_count(args) -> int:
    _bound(args.to, "--to")
    if args.hypercube:
        _bound(args.m, "--m", 1)
        rows = counting.hypercube_rows(args.m, args.to)
        totals_ok = all(counting.hypercube_total(args.m, n) == n**args.m for n in range(2, args.to + 1))
    else:
        rows = counting.quad_dim_rows(args.to)
        totals_ok = True
    _emit(_table(rows, args.format), args.output)
    return EXIT_OK if totals_ok else EXIT_FAIL


def cmd_gf(args) -> int:
    p = _load(args.operad, args.spec)
    _bound(args.order, "--order", 1)
    report = counting.gk_check(p, args.order)
    _emit(_dump_json(report), args.json)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_tree_dot(args) -> int:
    _bound(args.n, "--n")
    _emit(associahedron.face_lattice_dot(args.n), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _operad_args(sp):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--operad", help="built-in: ass, dend, dias, quad, dend_pow(m)")
    g.add_argument("--spec", help="path to an operad spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadkoszul", description="Quadratic operads, bar complexes and Koszulity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dims", help="dimension table of P(n) and its dual")
    _operad_args(sp)
    sp.add_argument("--max-arity", type=int, default=5)
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.add_argument("--output")
    sp.set_defaults(run=cmd_dims)

    sp = sub.add_parser("dual", help="quadratic dual as spec JSON")
    _operad_args(sp)
    sp.add_argument("--output")
    sp.set_defaults(run=cmd_dual)

    sp = sub.add_parser("square", help="black square product as spec JSON")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--left")
    g.add_argument("--left-spec")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--right")
    g.add_argument("--right-spec")
    sp.add_argument("--output")
    sp.set_defaults(run=cmd_square)

    sp = sub.add_parser("bar", help="bar complex dims and homology in one arity")
    _operad_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--json")
    sp.set_defaults(run=cmd_bar)

    sp = sub.add_parser("koszul", help="Koszulity check up to an arity")
    _operad_args(sp)
    sp.add_argument("--max-arity", type=int, required=True)
    sp.add_argument("--json")
    sp.add_argument("--workers", type=int, help=f"rank workers (default: ${bar.WORKERS_ENV} or cpu count)")
    sp.add_argument("--no-timing", action="store_true", help="write elapsed_ms as 0 for reproducible output")
    sp.set_defaults(run=cmd_koszul)

    sp = sub.add_parser("split", help="direct-summand check of the split complex")
    sp.add_argument("--kind", required=True, help="dend, quad or dend_pow(m)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--json")
    sp.set_defaults(run=cmd_split)

    sp = sub.add_parser("count", help="d_n table or hypercube counts")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--quad-dims", action="store_true")
    g.add_argument("--hypercube", action="store_true")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.add_argument("--output")
    sp.set_defaults(run=cmd_count)

    sp = sub.add_parser("gf", help="generating-series inversion check")
    _operad_args(sp)
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--json")
    sp.set_defaults(run=cmd_gf)

    sp = sub.add_parser("tree-dot", help="face lattice of the associahedron as DOT")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--output")
    sp.set_defaults(run=cmd_tree_dot)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"quadkoszul {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
