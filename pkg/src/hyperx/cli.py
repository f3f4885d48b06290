"""Command line interface.

Exit codes: 0 all claims verified, 1 a claim was refuted, 2 a resource limit
was hit (or a result was only emitted, not solved), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import covering
from .covering import Covering, bound_ledger, greedy_cover, randomized_cover_gnk, verify_cover
from .extensions import counterexample_sq_oct, delta52_extension
from .hypersimplex import SlackMatrix, g_pattern_matrix, slack_matrix_of_realization, slack_matrix_standard
from .polytope import Polytope, PolytopeError, hull
from .realization import (
    RatioMatrix,
    g_matrix_from_realization,
    is_f_generic,
    is_g_generic,
    random_ratio_matrix,
    sample_n2,
    singular_62_ratios,
    special_52_realization,
)
from .reproduce import TARGETS, Context, RunManifest, run_target, sha256_text
from .sat import TIMEOUT, decode_cover, parse_model, run_solver
from .sat.cnf import ENCODERS

EXIT_OK, EXIT_REFUTED, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_duration(text: str) -> float:
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad duration {text!r}")
    return float(m.group(1)) * {"": 1, "s": 1, "m": 60, "h": 3600}[m.group(2)]


def _emit(args, payload: dict, name: str | None = None):
    text = json.dumps(payload, indent=1, sort_keys=True, default=str)
    print(text)
    if name and args.json_out:
        out = Path(args.json_out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text + "\n")


def _write(path: str | None, data: dict):
    if path:
        Path(path).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_matrix(args) -> SlackMatrix:
    if getattr(args, "slack", None):
        return SlackMatrix.from_json(_read_json(args.slack))
    if getattr(args, "special52", False):
        p, lab = special_52_realization()
        return slack_matrix_of_realization(p, lab, 5, 2, name="special-52")
    if getattr(args, "g_pattern", False):
        if args.n is None or args.k is None:
            raise UsageError("--g-pattern needs --n and --k")
        return g_pattern_matrix(args.n, args.k)
    if args.n is None or args.k is None:
        raise UsageError("give --slack FILE or --n and --k")
    try:
        return slack_matrix_standard((args.n, args.k))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------


def cmd_hull(args) -> int:
    pts = _read_json(args.points)
    p = hull(pts, allow_lower_dim=args.allow_lower_dim)
    _write(args.out, p.to_json())
    _emit(args, {"vertices": p.n_vertices, "facets": p.n_facets, "affine_dim": p.affine_dim}, "hull.json")
    return EXIT_OK


def cmd_slack(args) -> int:
    if args.poly:
        data = _read_json(args.poly)
        p = Polytope.from_json(data["polytope"])
        S = slack_matrix_of_realization(p, data["labeling"], data["n"], data.get("k"))
    else:
        S = _load_matrix(args)
    _write(args.out, S.to_json())
    _emit(args, {"rows": S.nrows, "cols": S.ncols, "support": S.support_size(), "id": S.matrix_id})
    return EXIT_OK


def _sat_command(args, kind: str) -> int:
    S = _load_matrix(args)
    symmetry = args.symmetry == "on"
    f = ENCODERS[kind](S, args.r, symmetry=symmetry)
    info = {"kind": kind, "matrix": S.matrix_id, "r": args.r, "vars": f.var_count, "clauses": f.n_clauses,
            "symmetry": args.symmetry}
    dimacs = args.emit_dimacs or (args.external_solver_dimacs if not args.solve else None)
    if dimacs:
        Path(dimacs).write_text(f.to_dimacs())
        info["dimacs"] = dimacs
        info["dimacs_sha256"] = sha256_text(f.to_dimacs())
    if args.import_model:
        model = parse_model(Path(args.import_model).read_text(), f.var_count)
        if not f.satisfied_by(model):
            info["status"] = "model rejected"
            _emit(args, info)
            return EXIT_REFUTED
        cover = decode_cover(f, model)
        info.update(status="SAT", rectangles=cover.size)
        _write(args.cover_out, cover.to_json())
        _emit(args, info, f"{kind}.json")
        return EXIT_OK
    if not args.solve and dimacs:
        _emit(args, info, f"{kind}.json")
        return EXIT_OK
    res = run_solver(f, solver=args.solver, seed=args.seed, time_limit=args.timeout)
    info["status"] = res.status
    info["stats"] = {k: v for k, v in res.stats.items() if k != "wall_time"}
    if res.sat:
        cover = decode_cover(f, res.model)
        info["rectangles"] = cover.size
        _write(args.cover_out, cover.to_json())
    _emit(args, info, f"{kind}.json")
    if res.status == TIMEOUT:
        return EXIT_LIMIT
    if args.expect and args.expect.upper() != res.status:
        return EXIT_REFUTED
    return EXIT_OK


def cmd_rc(args) -> int:
    return _sat_command(args, "rc")


def cmd_grrc(args) -> int:
    return _sat_command(args, "grrc")


def cmd_rrc(args) -> int:
    return _sat_command(args, "rrc")


def cmd_cover(args) -> int:
    if args.action == "random":
        if args.n is None or args.k is None:
            raise UsageError("cover random needs --n and --k")
        try:
            rc = randomized_cover_gnk(args.n, args.k, args.trials, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        info = {"n": args.n, "k": args.k, "batch_size": rc.batch_size, "batches": rc.batches_tried,
                "success": rc.success}
        if rc.success:
            info["rectangles"] = rc.covering.size
            info["hypersimplex_upper_bound"] = args.n + rc.covering.size
            _write(args.out, rc.covering.to_json())
        _emit(args, info, "cover-random.json")
        return EXIT_OK if rc.success else EXIT_LIMIT
    S = _load_matrix(args)
    if args.action == "greedy":
        c = greedy_cover(S)
        _write(args.out, c.to_json())
        _emit(args, {"matrix": S.matrix_id, "rectangles": c.size}, "cover-greedy.json")
        return EXIT_OK
    if not args.cover:
        raise UsageError("cover verify needs --cover FILE")
    c = Covering.from_json(_read_json(args.cover))
    try:
        check = verify_cover(S, c)
    except covering.MatrixMismatch as exc:
        _emit(args, {"ok": False, "reason": str(exc)})
        return EXIT_REFUTED
    _emit(args, {"ok": check.ok, "rectangles": c.size, "violation": check.violation, "reason": check.reason})
    return EXIT_OK if check.ok else EXIT_REFUTED


def cmd_realize(args) -> int:
    if args.ratios:
        ratios = RatioMatrix.from_json(_read_json(args.ratios))
    elif args.singular62:
        ratios = singular_62_ratios()
    else:
        if args.n is None:
            raise UsageError("realize needs --n, --ratios or --singular62")
        ratios = random_ratio_matrix(args.n, args.seed)
    if args.n is not None and ratios.n != args.n:
        raise UsageError(f"ratio matrix has size {ratios.n}, not {args.n}")
    p, lab = sample_n2(ratios)
    _write(args.out, {"polytope": p.to_json(), "labeling": lab, "n": ratios.n, "k": 2,
                      "ratios": ratios.to_json()})
    info = {"n": ratios.n, "vertices": p.n_vertices, "facets": p.n_facets}
    if args.check_generic:
        g = g_matrix_from_realization(p, lab, 2)
        info.update(f_generic=is_f_generic(p, lab), g_generic=is_g_generic(g),
                    principal_minors=g.principal_minors_ok(2))
    _emit(args, info, "realize.json")
    return EXIT_OK


def cmd_extend(args) -> int:
    if args.which == "delta52":
        e = delta52_extension()
        _write(args.out, e.to_json())
        _emit(args, {"facets": e.size, "verified": e.verify(), "target_vertices": e.target.n_vertices})
        return EXIT_OK
    so = counterexample_sq_oct()
    _write(args.out, {"Q": so.q.to_json(), "P": so.p.to_json()})
    _emit(args, {"Q_facets": so.q.n_facets, "P_facets": so.p.n_facets,
                 "octagon_vertices": so.octagon().n_vertices, "square_vertices": so.square().n_vertices})
    return EXIT_OK


def cmd_bounds(args) -> int:
    try:
        led = bound_ledger(args.n, args.k, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"n": led.n, "k": led.k, "mode": led.mode, "lower": led.lower, "upper": led.upper,
                 "exact": led.exact, "trace": [list(t) for t in led.trace]})
    return EXIT_OK


def cmd_reproduce(args, argv) -> int:
    names = list(TARGETS) if args.target == "all" else [args.target]
    out_dir = Path(args.json_out) if args.json_out else None
    ctx = Context(out_dir, args.seed, args.timeout, args.solver,
                  Path(args.external_solver_dimacs) if args.external_solver_dimacs else None)
    manifest = RunManifest(list(argv), args.seed, {"timeout": args.timeout, "solver": args.solver})
    codes = []
    for name in names:
        t0 = time.monotonic()
        report = run_target(name, ctx)
        manifest.timings[name] = round(time.monotonic() - t0, 3)
        manifest.outcome[name] = [vars(c) for c in report.claims]
        for c in report.claims:
            print(f"[{c.status.upper():7}] {name}: {c.claim} (expected {c.expected}, observed {c.observed})")
        codes.append(report.exit_code)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        manifest.write(out_dir / "manifest.json")
    return EXIT_REFUTED if EXIT_REFUTED in codes else max(codes)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--timeout", type=parse_duration, default=argparse.SUPPRESS,
                        help="wall-clock budget, e.g. 600, 30m, 1800s")
    common.add_argument("--json-out", default=argparse.SUPPRESS, metavar="DIR")
    common.add_argument("--external-solver-dimacs", default=argparse.SUPPRESS, metavar="PATH",
                        help="emit DIMACS instead of solving")
    common.add_argument("--solver", default=argparse.SUPPRESS,
                        help="'internal' (default) or a python-sat solver name such as cadical153")

    parser = _Parser(prog="hyperx", description=__doc__.splitlines()[0], parents=[common])
    parser.set_defaults(seed=0, timeout=None, json_out=None, external_solver_dimacs=None, solver="internal")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_args(p):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--slack", help="slack matrix JSON")
        p.add_argument("--special52", action="store_true", help="the special (5,2) realization")
        p.add_argument("--g-pattern", action="store_true", help="use G(n,k) instead of the full slack matrix")

    p = sub.add_parser("hull", parents=[common], help="convex hull of exact points")
    p.add_argument("--points", required=True)
    p.add_argument("--allow-lower-dim", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("slack", parents=[common], help="slack matrix of a hypersimplex")
    matrix_args(p)
    p.add_argument("--poly", help="labeled realization JSON written by 'realize'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_slack)

    for kind, func in (("rc", cmd_rc), ("grrc", cmd_grrc), ("rrc", cmd_rrc)):
        p = sub.add_parser(kind, parents=[common], help=f"{kind} decision problem at a given r")
        matrix_args(p)
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--emit-dimacs", metavar="FILE")
        p.add_argument("--solve", action="store_true", help="solve even when emitting DIMACS")
        p.add_argument("--symmetry", choices=("on", "off"), default="on")
        p.add_argument("--import-model", metavar="FILE", help="decode an external solver's model")
        p.add_argument("--cover-out", metavar="FILE")
        p.add_argument("--expect", choices=("sat", "unsat"))
        p.set_defaults(func=func)

    p = sub.add_parser("cover", parents=[common], help="verify, greedy or random covers")
    p.add_argument("action", choices=("verify", "greedy", "random"))
    matrix_args(p)
    p.add_argument("--cover", help="covering JSON to verify")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("realize", parents=[common], help="edge-ratio realization of an (n,2)-hypersimplex")
    p.add_argument("--n", type=int)
    p.add_argument("--ratios", help="ratio matrix JSON")
    p.add_argument("--singular62", action="store_true")
    p.add_argument("--check-generic", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("extend", parents=[common], help="explicit extensions")
    p.add_argument("which", choices=("delta52", "sq-oct"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("bounds", parents=[common], help="bound ledger for a hypersimplex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("standard", "combinatorial"), default="standard")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reproduce", parents=[common], help="run a named reproduction target")
    p.add_argument("target", choices=sorted(TARGETS) + ["all"])
    p.set_defaults(func=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "reproduce":
            return cmd_reproduce(args, argv)
        return args.func(args)
    except UsageError as exc:
        print(f"hyperx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PolytopeError, ValueError) as exc:
        print(f"hyperx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
