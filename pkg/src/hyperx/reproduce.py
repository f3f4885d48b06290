"""Named reproduction targets: each runs a pipeline and reports pass/fail per claim."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .covering import (
    compose_hypersimplex_cover,
    row_cover,
    verify_cover,
)
from .exact import determinant
from .extensions import counterexample_sq_oct, delta52_extension
from .hypersimplex import g_pattern_matrix, slack_matrix_of_realization, slack_matrix_standard
from .polytope import is_combinatorial_hypersimplex
from .realization import is_g_generic, sample_n2, singular_62_ratios, special_52_realization
from .sat import TIMEOUT, UNSAT, SolverTimeout, decode_cover, encode_grrc, encode_rc, rc_exact, run_solver


@dataclass
class Claim:
    claim: str
    expected: object
    observed: object
    status: str  # "pass", "fail", "timeout" or "emitted"
    certificate: str | None = None


@dataclass
class TargetReport:
    target: str
    claims: list[Claim] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.claims)

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.claims}
        if "fail" in statuses:
            return 1
        if statuses - {"pass"}:
            return 2
        return 0


@dataclass
class RunManifest:
    argv: list[str]
    seed: int
    limits: dict
    inputs: dict = field(default_factory=dict)
    outcome: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def write(self, path: Path):
        path.write_text(json.dumps(asdict(self), indent=1, sort_keys=True, default=str) + "\n")


@dataclass
class Context:
    out_dir: Path | None = None
    seed: int = 0
    timeout: float | None = None
    solver: str = "internal"
    dimacs_dir: Path | None = None

    def write(self, target: str, name: str, data) -> str | None:
        if self.out_dir is None:
            return None
        d = self.out_dir / target
        d.mkdir(parents=True, exist_ok=True)
        path = d / name
        if isinstance(data, str):
            path.write_text(data)
        else:
            path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        return str(Path(target) / name)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _unsat_claim(ctx: Context, target: str, label: str, f, name: str) -> Claim:
    """Solve ``f`` expecting UNSAT, or only emit its DIMACS in emit-only mode."""
    if ctx.dimacs_dir is not None:
        ctx.dimacs_dir.mkdir(parents=True, exist_ok=True)
        path = ctx.dimacs_dir / f"{target}-{name}.cnf"
        path.write_text(f.to_dimacs())
        return Claim(label, "UNSAT", "not solved", "emitted", str(path))
    res = run_solver(f, solver=ctx.solver, seed=ctx.seed, time_limit=ctx.timeout)
    cert = ctx.write(target, f"{name}.json", {
        "kind": f.kind, "r": f.r, "vars": f.var_count, "clauses": f.n_clauses,
        "symmetry": f.symmetry, "status": res.status, "solver": ctx.solver, "seed": ctx.seed,
        "dimacs_sha256": sha256_text(f.to_dimacs()),
    })
    if res.status == TIMEOUT:
        return Claim(label, "UNSAT", TIMEOUT, "timeout", cert)
    return Claim(label, "UNSAT", res.status, _status(res.status == UNSAT), cert)


def _rc_target(ctx: Context, target: str, n: int, k: int, expected: int) -> list[Claim]:
    S = slack_matrix_standard((n, k))
    claims = []
    if ctx.dimacs_dir is not None:
        f = encode_rc(S, expected - 1, symmetry=True)
        claims.append(_unsat_claim(ctx, target, f"rc(Delta({n},{k})) > {expected - 1}", f, f"rc-r{expected - 1}"))
    else:
        try:
            res = rc_exact(S, solver=ctx.solver, seed=ctx.seed, time_limit=ctx.timeout)
        except SolverTimeout as exc:
            return [Claim(f"rc(Delta({n},{k})) = {expected}", expected, list(exc.bracket), "timeout")]
        cert = ctx.write(target, "cover.json", res.cover.to_json())
        ctx.write(target, "search.json", [{k2: v for k2, v in run.items()
                                           if k2 in ("r", "status", "vars", "clauses")} for run in res.runs])
        claims.append(Claim(f"rc(Delta({n},{k})) = {expected}", expected, res.value,
                            _status(res.value == expected), cert))
    cover = row_cover(S)
    cert = ctx.write(target, "cube-cover.json", cover.to_json())
    claims.append(Claim(f"{2 * n} cube inequalities give a {2 * n}-rectangle cover", 2 * n, cover.size,
                        _status(cover.size == 2 * n and bool(verify_cover(S, cover))), cert))
    return claims


def target_rc_delta42(ctx):
    return _rc_target(ctx, "thm11-42", 4, 2, 6)


def target_rc_delta52(ctx):
    claims = _rc_target(ctx, "thm11-52", 5, 2, 9)
    ext = delta52_extension()
    cert = ctx.write("thm11-52", "extension.json", ext.to_json())
    claims.append(Claim("9-facet extension of Delta(5,2)", 9, ext.size, _status(ext.size == 9 and ext.verify()), cert))
    return claims


def _lower_only(ctx, target, n, k):
    S = slack_matrix_standard((n, k))
    f = encode_rc(S, 2 * n - 1, symmetry=True)
    claims = [_unsat_claim(ctx, target, f"rc(Delta({n},{k})) > {2 * n - 1}", f, f"rc-r{2 * n - 1}")]
    cover = row_cover(S)
    cert = ctx.write(target, "cube-cover.json", cover.to_json())
    claims.append(Claim(f"{2 * n}-rectangle cover from the cube inequalities", 2 * n, cover.size,
                        _status(bool(verify_cover(S, cover))), cert))
    return claims


def target_rc_delta62(ctx):
    return _lower_only(ctx, "thm11-62", 6, 2)


def target_rc_delta63(ctx):
    return _lower_only(ctx, "thm11-63", 6, 3)


def target_grrc_52(ctx):
    p, lab = special_52_realization()
    S = slack_matrix_of_realization(p, lab, 5, 2, name="special-52")
    ctx.write("grrc-52", "slack.json", S.to_json())
    f = encode_grrc(S, 9, symmetry=True)
    return [
        Claim("generic refined formula has 450 variables", 450, f.var_count, _status(f.var_count == 450)),
        _unsat_claim(ctx, "grrc-52", "no generic refined cover with 9 rectangles", f, "grrc-r9"),
    ]


def target_rc102_upper(ctx):
    G = g_pattern_matrix(10, 2)
    f = encode_rc(G, 9, symmetry=True)
    if ctx.dimacs_dir is not None:
        ctx.dimacs_dir.mkdir(parents=True, exist_ok=True)
        path = ctx.dimacs_dir / "rc102-upper-G102-r9.cnf"
        path.write_text(f.to_dimacs())
        return [Claim("rc(Delta(10,2)) <= 19", 19, "not solved", "emitted", str(path))]
    res = run_solver(f, solver=ctx.solver, seed=ctx.seed, time_limit=ctx.timeout)
    if res.status == TIMEOUT:
        return [Claim("rc(Delta(10,2)) <= 19", 19, TIMEOUT, "timeout")]
    if res.status == UNSAT:
        return [Claim("G(10,2) has a 9-rectangle cover", "SAT", "UNSAT", "fail")]
    gcover = decode_cover(f, res.model)
    full = compose_hypersimplex_cover(10, 2, gcover)
    S = slack_matrix_standard((10, 2))
    ok = bool(verify_cover(S, full)) and full.size <= 19
    ctx.write("rc102-upper", "G102-cover.json", gcover.to_json())
    cert = ctx.write("rc102-upper", "cover.json", full.to_json())
    return [Claim("rc(Delta(10,2)) <= 19", 19, full.size, _status(ok), cert)]


def target_singular_62(ctx):
    ratios = singular_62_ratios()
    det = determinant(ratios.rho)
    p, lab = sample_n2(ratios)
    cert = ctx.write("singular-62", "ratios.json", ratios.to_json())
    ctx.write("singular-62", "polytope.json", {"polytope": p.to_json(), "labeling": lab, "n": 6, "k": 2})
    return [
        Claim("determinant of the G-matrix", "0", str(det), _status(det == 0), cert),
        Claim("not G-generic", False, is_g_generic(ratios), _status(not is_g_generic(ratios))),
        Claim("edge points realize Delta(6,2)", True, is_combinatorial_hypersimplex(p, 6, 2, lab),
              _status(is_combinatorial_hypersimplex(p, 6, 2, lab))),
    ]


def target_sq_oct(ctx):
    so = counterexample_sq_oct()
    cert = ctx.write("sq-oct", "polytopes.json", {"Q": so.q.to_json(), "P": so.p.to_json()})
    claims = [
        Claim("Q has 7 facets", 7, so.q.n_facets, _status(so.q.n_facets == 7), cert),
        Claim("P has an 8-vertex facet", 8, so.octagon().n_vertices, _status(so.octagon().n_vertices == 8)),
        Claim("disjoint 4-vertex facet", 4, so.square().n_vertices, _status(so.square().n_vertices == 4)),
    ]
    S = so.octagon_slack()
    try:
        res = rc_exact(S, solver=ctx.solver, seed=ctx.seed, time_limit=ctx.timeout)
    except SolverTimeout as exc:
        claims.append(Claim("rc(octagon) = 6", 6, list(exc.bracket), "timeout"))
        return claims
    ocert = ctx.write("sq-oct", "octagon-cover.json", res.cover.to_json())
    claims.append(Claim("rc(octagon) = 6", 6, res.value, _status(res.value == 6), ocert))
    return claims


TARGETS: dict[str, Callable[[Context], list[Claim]]] = {
    "thm11-42": target_rc_delta42,
    "thm11-52": target_rc_delta52,
    "thm11-62": target_rc_delta62,
    "thm11-63": target_rc_delta63,
    "grrc-52": target_grrc_52,
    "rc102-upper": target_rc102_upper,
    "singular-62": target_singular_62,
    "sq-oct": target_sq_oct,
}


def run_target(name: str, ctx: Context) -> TargetReport:
    if name not in TARGETS:
        raise KeyError(name)
    t0 = time.monotonic()
    claims = TARGETS[name](ctx)
    return TargetReport(name, claims, time.monotonic() - t0)

