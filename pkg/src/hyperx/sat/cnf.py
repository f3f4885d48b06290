"""CNF encodings of rectangle covering problems, plus DIMACS I/O.

Variable ``var(l, c) = l * |supp| + c + 1`` means "support cell ``c`` (row-major
rank) lies in rectangle ``l``", with ``l`` counted from 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from ..covering import fooling_index_pairs, large_fooling_set
from ..hypersimplex import SlackMatrix


@dataclass
class CnfFormula:
    var_count: int
    clauses: list[list[int]]
    cells: list[tuple[int, int]] = field(default_factory=list)
    r: int = 0
    kind: str = "rc"
    matrix: SlackMatrix | None = field(default=None, repr=False, compare=False)
    symmetry: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def var(self, l: int, c: int) -> int:
        return l * len(self.cells) + c + 1

    def decode_var(self, v: int) -> tuple[int, tuple[int, int]]:
        """Inverse of ``var``: (rectangle index, cell)."""
        l, c = divmod(v - 1, len(self.cells))
        return l, self.cells[c]

    def var_map(self) -> Iterator[tuple[int, tuple[int, int], int]]:
        for l in range(self.r):
            for c, cell in enumerate(self.cells):
                yield l, cell, self.var(l, c)

    def to_dimacs(self) -> str:
        lines = [f"c {self.kind} r={self.r} matrix={self.matrix.matrix_id if self.matrix else ''}",
                 f"c symmetry={'on' if self.symmetry else 'off'}",
                 f"p cnf {self.var_count} {len(self.clauses)}"]
        lines.extend(" ".join(map(str, cl)) + " 0" for cl in self.clauses)
        return "\n".join(lines) + "\n"

    def satisfied_by(self, model: Iterable[int]) -> bool:
        return check_model(self.clauses, model)


def check_model(clauses: list[list[int]], model: Iterable[int]) -> bool:
    true = {lit for lit in model if lit}
    return all(any(lit in true for lit in cl) for cl in clauses)


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars, clauses, cur = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            nvars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                nvars = max(nvars, abs(lit))
                cur.append(lit)
    if cur:
        clauses.append(cur)
    return nvars, clauses


def parse_model(text: str, var_count: int) -> list[int]:
    """Read a solver model ('v' lines or a bare literal list) as a full literal list.

    Variables the model leaves out are set false.
    """
    value = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "cs":
            continue
        if line[0] == "v":
            line = line[1:]
        for tok in re.split(r"\s+", line.strip()):
            if not tok:
                continue
            lit = int(tok)
            if lit:
                value[abs(lit)] = lit > 0
    return [v if value.get(v, False) else -v for v in range(1, var_count + 1)]


def _base(S: SlackMatrix, r: int, kind: str, symmetry: bool) -> tuple[CnfFormula, list[tuple[int, int]]]:
    if r < 0:
        raise ValueError("r must be nonnegative")
    cells = S.support()
    N = len(cells)
    f = CnfFormula(r * N, [], cells, r, kind, S, symmetry)
    if r == 0:
        if N:
            f.clauses.append([])
            f.meta["trivially_unsat"] = True
        return f, []
    var = f.var
    for c in range(N):
        f.clauses.append([var(l, c) for l in range(r)])
    pairs = fooling_index_pairs(S, cells)
    for a, b in pairs:
        for l in range(r):
            f.clauses.append([-var(l, a), -var(l, b)])
    f.meta["fooling_pairs"] = len(pairs)
    return f, pairs


def _break_symmetry(f: CnfFormula, pairs, strict: bool):
    """Pin a fooling set to the first rectangles and order the rest by smallest cell.

    Every cover can be relabeled so that fooling cell t sits in rectangle t.
    For plain covers the cell sets can also be made disjoint, giving a strict
    order on the smallest cells; the refined variants only get a weak order.
    """
    S, r, cells, var = f.matrix, f.r, f.cells, f.var
    fooling = large_fooling_set(S, cells, pairs)
    m = min(len(fooling), r)
    for t in range(m):
        f.clauses.append([var(t, fooling[t])])
    for l in range(m + 1, r):
        for c in range(len(cells)):
            upto = c if strict else c + 1
            f.clauses.append([-var(l, c)] + [var(l - 1, c2) for c2 in range(upto)])
    f.meta["fooling_set"] = len(fooling)
    f.meta["pinned"] = m


def encode_rc(S: SlackMatrix, r: int, *, symmetry: bool = False) -> CnfFormula:
    """Satisfiable iff the support of S is a union of at most r rectangles.

    Cell sets with no fooling pair span valid rectangles (any two of their
    cells have positive cross entries), so no further clauses are needed.
    """
    f, pairs = _base(S, r, "rc", symmetry)
    if symmetry and r:
        _break_symmetry(f, pairs, strict=True)
    return f


def _quads(S: SlackMatrix) -> Iterator[tuple[int, int, int, int, object, object]]:
    """Positive 2x2 submatrices: (i, j, k, l, S_ik*S_jl, S_il*S_jk) with i<j, k<l."""
    P, E = S.pattern, S.entries
    for i, j in combinations(range(S.nrows), 2):
        Pi, Pj = P[i], P[j]
        common = [c for c in range(S.ncols) if Pi[c] and Pj[c]]
        for k, l in combinations(common, 2):
            yield i, j, k, l, E[i, k] * E[j, l], E[i, l] * E[j, k]


def encode_grrc(S: SlackMatrix, r: int, *, symmetry: bool = False) -> CnfFormula:
    """rc clauses plus: a positive 2x2 block with unequal cross products needs two rectangles.

    For every such block and every l0 the clause forbids rectangle l0 holding
    all four cells while no other rectangle touches any of them.
    """
    f, pairs = _base(S, r, "grrc", symmetry)
    if not r:
        return f
    index = {cell: c for c, cell in enumerate(f.cells)}
    var = f.var
    blocks = 0
    for i, j, k, l, diag, anti in _quads(S):
        if diag == anti:
            continue
        blocks += 1
        quad = [index[i, k], index[j, l], index[i, l], index[j, k]]
        for l0 in range(r):
            cl = [-var(l0, c) for c in quad]
            cl += [var(l2, c) for l2 in range(r) if l2 != l0 for c in quad]
            f.clauses.append(cl)
    f.meta["unequal_blocks"] = blocks
    if symmetry:
        _break_symmetry(f, pairs, strict=False)
    return f


def encode_rrc(S: SlackMatrix, r: int, *, symmetry: bool = False) -> CnfFormula:
    """rc clauses plus: if S_ik S_jl > S_il S_jk, cells (i,k) and (j,l) are not both
    covered by one rectangle alone.

    Per l0: rectangle l0 holds both cells and no other rectangle holds either.
    """
    f, pairs = _base(S, r, "rrc", symmetry)
    if not r:
        return f
    index = {cell: c for c, cell in enumerate(f.cells)}
    var = f.var
    strict = 0
    for i, j, k, l, diag, anti in _quads(S):
        if diag > anti:
            a, b = index[i, k], index[j, l]
        elif diag < anti:
            a, b = index[i, l], index[j, k]
        else:
            continue
        strict += 1
        for l0 in range(r):
            cl = [-var(l0, a), -var(l0, b)]
            for l2 in range(r):
                if l2 != l0:
                    cl += [var(l2, a), var(l2, b)]
            f.clauses.append(cl)
    f.meta["strict_pairs"] = strict
    if symmetry:
        _break_symmetry(f, pairs, strict=False)
    return f


ENCODERS = {"rc": encode_rc, "grrc": encode_grrc, "rrc": encode_rrc}
