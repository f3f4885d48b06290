"""Decoding models into covers and the exact rc search driver."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..covering import Covering, Rectangle, greedy_cover, verify_cover
from ..hypersimplex import SlackMatrix
from .cdcl import SAT, TIMEOUT, UNSAT, SolveResult, solve
from .cnf import CnfFormula, check_model, encode_rc


class DecodeError(RuntimeError):
    """A model whose rectangle classes do not span valid rectangles."""


class SolverTimeout(RuntimeError):
    def __init__(self, message: str, bracket: tuple[int, int]):
        super().__init__(message)
        self.bracket = bracket


def decode_cover(f: CnfFormula, model) -> Covering:
    """Rectangles spanned by the true X(l, cell) variables, validated against the matrix."""
    if f.matrix is None:
        raise ValueError("formula carries no matrix")
    if not check_model(f.clauses, model):
        raise ValueError("model does not satisfy the formula")
    S = f.matrix
    true = {lit for lit in model if lit > 0}
    rects = []
    for l in range(f.r):
        rows, cols = set(), set()
        for c, (i, j) in enumerate(f.cells):
            if f.var(l, c) in true:
                rows.add(i)
                cols.add(j)
        if not rows:
            continue
        rect = Rectangle(tuple(rows), tuple(cols))
        if not rect.is_valid_for(S):
            raise DecodeError(f"rectangle {l} spans a zero entry")
        rects.append(rect)
    cover = Covering(tuple(rects), S.matrix_id)
    check = verify_cover(S, cover)
    if not check:
        raise DecodeError(f"decoded cover fails at {check.violation}: {check.reason}")
    return cover


def solve_external(f: CnfFormula, name: str = "cadical153", *, time_limit: float | None = None) -> SolveResult:
    """Solve with a solver from the optional ``python-sat`` package."""
    from pysat.solvers import Solver as PySolver

    t0 = time.monotonic()
    with PySolver(name=name, bootstrap_with=f.clauses) as s:
        if time_limit is None:
            ok = s.solve()
        else:
            import threading

            timer = threading.Timer(time_limit, s.interrupt)
            timer.start()
            ok = s.solve_limited(expect_interrupt=True)
            timer.cancel()
        stats = dict(s.accum_stats())
        stats["wall_time"] = time.monotonic() - t0
        stats["solver"] = name
        if ok is None:
            return SolveResult(TIMEOUT, None, stats)
        if not ok:
            return SolveResult(UNSAT, None, stats)
        raw = set(s.get_model())
    model = [v if v in raw else -v for v in range(1, f.var_count + 1)]
    if not check_model(f.clauses, model):
        raise AssertionError("external model violates the formula")
    return SolveResult(SAT, model, stats)


def run_solver(f: CnfFormula, *, solver: str = "internal", seed: int = 0,
               time_limit: float | None = None, conflict_limit: int | None = None) -> SolveResult:
    if solver == "internal":
        return solve(f, seed=seed, time_limit=time_limit, conflict_limit=conflict_limit)
    return solve_external(f, solver, time_limit=time_limit)


@dataclass
class RcResult:
    value: int
    cover: Covering
    runs: list[dict] = field(default_factory=list)


def rc_exact(S: SlackMatrix, lo: int | None = None, hi: int | None = None, *,
             solver: str = "internal", seed: int = 0, time_limit: float | None = None,
             symmetry: bool = True) -> RcResult:
    """Smallest r such that the support of S is covered by r rectangles.

    Walks down from a greedy cover: each satisfiable r yields a decoded cover
    (possibly with fewer rectangles), and the search ends at the first
    unsatisfiable r, which certifies the lower bound.
    """
    if lo is None:
        lo = (S.dim + 1) if S.dim is not None else 1
    cover = greedy_cover(S)
    if hi is not None and hi < cover.size:
        hi_cover = None
        best_hi = hi
    else:
        hi_cover = cover
        best_hi = cover.size
    if lo > best_hi:
        raise ValueError(f"empty bracket [{lo}, {best_hi}]")
    runs: list[dict] = []
    t0 = time.monotonic()
    r = best_hi if hi_cover is None else best_hi - 1
    while r >= 0:
        left = None if time_limit is None else max(0.0, time_limit - (time.monotonic() - t0))
        f = encode_rc(S, r, symmetry=symmetry)
        res = run_solver(f, solver=solver, seed=seed, time_limit=left)
        runs.append({"r": r, "status": res.status, "vars": f.var_count, "clauses": f.n_clauses,
                     **{k: v for k, v in res.stats.items() if k != "wall_time"}})
        if res.status == TIMEOUT:
            raise SolverTimeout(f"solver budget exhausted at r={r}", (max(lo, r), best_hi))
        if res.status == UNSAT:
            break
        hi_cover = decode_cover(f, res.model)
        best_hi = hi_cover.size
        r = best_hi - 1
    if hi_cover is None:
        raise RuntimeError("no cover found inside the given bracket")
    return RcResult(best_hi, hi_cover, runs)


__all__ = ["DecodeError", "SolverTimeout", "decode_cover", "solve_external", "run_solver",
           "RcResult", "rc_exact", "SAT", "UNSAT", "TIMEOUT"]
