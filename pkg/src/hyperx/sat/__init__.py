"""SAT encodings of rectangle covering and a built-in CDCL engine."""

from .cdcl import SAT, TIMEOUT, UNSAT, SolveResult, Solver, solve, solve_clauses
from .cnf import CnfFormula, check_model, encode_grrc, encode_rc, encode_rrc, parse_dimacs, parse_model
from .search import DecodeError, RcResult, SolverTimeout, decode_cover, rc_exact, run_solver, solve_external

__all__ = [
    "SAT", "UNSAT", "TIMEOUT", "SolveResult", "Solver", "solve", "solve_clauses",
    "CnfFormula", "check_model", "encode_rc", "encode_grrc", "encode_rrc", "parse_dimacs", "parse_model",
    "DecodeError", "RcResult", "SolverTimeout", "decode_cover", "rc_exact", "run_solver", "solve_external",
]
