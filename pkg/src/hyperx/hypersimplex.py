"""Hypersimplices, their F/G facets and slack matrices."""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

from .exact import ExactMatrix, rank, sign
from .polytope import Polytope, is_combinatorial_hypersimplex, normalize_labeling


@dataclass(frozen=True)
class HypersimplexSpec:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"need 0 < k < n, got (n, k) = ({self.n}, {self.k})")

    @property
    def proper(self) -> bool:
        return 2 <= self.k <= self.n - 2

    @property
    def dim(self) -> int:
        return self.n - 1

    def __str__(self):
        return f"Delta({self.n},{self.k})"


def _spec(spec) -> HypersimplexSpec:
    if isinstance(spec, HypersimplexSpec):
        return spec
    n, k = spec
    return HypersimplexSpec(n, k)


def subsets(spec) -> list[tuple[int, ...]]:
    """k-subsets of {0..n-1} in lexicographic order (the column order)."""
    s = _spec(spec)
    return list(combinations(range(s.n), s.k))


def vertices(spec) -> list[tuple[int, ...]]:
    s = _spec(spec)
    return [tuple(int(i in S) for i in range(s.n)) for S in subsets(s)]


def row_labels(n: int) -> tuple[str, ...]:
    return tuple(f"F{i}" for i in range(1, n + 1)) + tuple(f"G{i}" for i in range(1, n + 1))


def subset_label(S: Sequence[int]) -> tuple[int, ...]:
    """1-based column label for a 0-based subset."""
    return tuple(i + 1 for i in S)


@dataclass(frozen=True)
class SlackMatrix:
    """Nonnegative exact matrix with labeled facet rows and vertex columns.

    ``dim`` is the dimension of the underlying polytope when known; it feeds
    the default lower bound of exact covering searches.
    """

    entries: ExactMatrix
    row_labels: tuple = ()
    col_labels: tuple = ()
    name: str = ""
    dim: int | None = None
    _pattern: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        m = self.entries
        rl = tuple(self.row_labels) or tuple(f"r{i}" for i in range(m.nrows))
        cl = tuple(self.col_labels) or tuple(f"c{j}" for j in range(m.ncols))
        if len(rl) != m.nrows or len(cl) != m.ncols:
            raise ValueError("label count does not match the matrix shape")
        pattern = []
        for row in m.rows:
            prow = []
            for x in row:
                s = sign(x)
                if s < 0:
                    raise ValueError("slack matrices are nonnegative")
                prow.append(s > 0)
            pattern.append(tuple(prow))
        object.__setattr__(self, "row_labels", rl)
        object.__setattr__(self, "col_labels", cl)
        object.__setattr__(self, "_pattern", tuple(pattern))

    @classmethod
    def from_rows(cls, rows, **kw) -> "SlackMatrix":
        return cls(ExactMatrix(rows), **kw)

    @property
    def nrows(self) -> int:
        return self.entries.nrows

    @property
    def ncols(self) -> int:
        return self.entries.ncols

    @property
    def pattern(self) -> tuple[tuple[bool, ...], ...]:
        return self._pattern

    def __getitem__(self, idx):
        return self.entries[idx]

    def positive(self, i: int, j: int) -> bool:
        return self._pattern[i][j]

    def support(self) -> list[tuple[int, int]]:
        """Positive cells in row-major order."""
        return [(i, j) for i, row in enumerate(self._pattern) for j, v in enumerate(row) if v]

    def support_size(self) -> int:
        return sum(sum(row) for row in self._pattern)

    @property
    def is_binary(self) -> bool:
        return all(x in (0, 1) for row in self.entries.rows for x in row)

    def check_slack_shape(self) -> list[str]:
        """Violations of 'every row and every column has a zero'."""
        problems = []
        for i, row in enumerate(self._pattern):
            if all(row):
                problems.append(f"row {self.row_labels[i]} has no zero")
        for j in range(self.ncols):
            if all(row[j] for row in self._pattern):
                problems.append(f"column {self.col_labels[j]} has no zero")
        return problems

    def submatrix(self, rows: Sequence[int], cols: Sequence[int], name: str = "") -> "SlackMatrix":
        return SlackMatrix(
            self.entries.submatrix(rows, cols),
            tuple(self.row_labels[i] for i in rows),
            tuple(self.col_labels[j] for j in cols),
            name=name,
        )

    def transpose(self) -> "SlackMatrix":
        return SlackMatrix(self.entries.transpose(), self.col_labels, self.row_labels,
                           name=f"{self.name}^T" if self.name else "")

    @property
    def matrix_id(self) -> str:
        if self.name:
            return self.name
        blob = json.dumps(self.entries.to_json(), sort_keys=True).encode()
        return "sha256:" + hashlib.sha256(blob).hexdigest()[:16]

    def to_json(self) -> dict:
        data = self.entries.to_json()
        data["row_labels"] = [list(x) if isinstance(x, tuple) else x for x in self.row_labels]
        data["col_labels"] = [list(x) if isinstance(x, tuple) else x for x in self.col_labels]
        data["name"] = self.name
        if self.dim is not None:
            data["dim"] = self.dim
        return data

    @classmethod
    def from_json(cls, data: dict) -> "SlackMatrix":
        fix = lambda labels: tuple(tuple(x) if isinstance(x, list) else x for x in labels)  # noqa: E731
        return cls(
            ExactMatrix.from_json(data),
            fix(data.get("row_labels", ())),
            fix(data.get("col_labels", ())),
            name=data.get("name", ""),
            dim=data.get("dim"),
        )

    @classmethod
    def from_polytope(cls, p: Polytope, name: str = "") -> "SlackMatrix":
        rows = [[p.value(i, j) for j in range(p.n_vertices)] for i in range(p.n_facets)]
        return cls(ExactMatrix(rows, ncols=p.n_vertices), name=name, dim=p.affine_dim)


def slack_matrix_standard(spec) -> SlackMatrix:
    """0/1 slack matrix of the cube-slice description, rows F1..Fn, G1..Gn."""
    s = _spec(spec)
    if not s.proper:
        warnings.warn(f"{s} is a simplex; some F/G rows are not facets", stacklevel=2)
    cols = subsets(s)
    rows = [[int(i in S) for S in cols] for i in range(s.n)]
    rows += [[int(i not in S) for S in cols] for i in range(s.n)]
    return SlackMatrix(
        ExactMatrix(rows),
        row_labels(s.n),
        tuple(subset_label(S) for S in cols),
        name=f"hypersimplex({s.n},{s.k})",
        dim=s.dim,
    )


def standard_polytope(spec) -> tuple[Polytope, dict[str, int]]:
    """The standard realization in R^n with its natural F/G labeling."""
    s = _spec(spec)
    n = s.n
    ineqs = [tuple([0] + [int(j == i) for j in range(n)]) for i in range(n)]
    ineqs += [tuple([1] + [-int(j == i) for j in range(n)]) for i in range(n)]
    eq = tuple([-s.k] + [1] * n)
    p = Polytope(n, vertices=vertices(s), inequalities=ineqs, equations=(eq,))
    labeling = {lab: idx for idx, lab in enumerate(row_labels(n))}
    return p, labeling


def _infer_k(p: Polytope, lab: list[int], n: int) -> int:
    inc = p.incidence()
    return sum(1 for i in range(n) if inc[lab[n + i]][0])


def slack_matrix_of_realization(p: Polytope, labeling, n: int | None = None,
                                k: int | None = None, name: str = "") -> SlackMatrix:
    """Exact slack matrix of a labeled combinatorial hypersimplex.

    Rows follow the labels F1..Fn, G1..Gn; columns are ordered by the k-subset
    each vertex corresponds to.
    """
    if n is None:
        n = len(labeling) // 2
    lab = normalize_labeling(labeling, n)
    if k is None:
        k = _infer_k(p, lab, n)
    if not is_combinatorial_hypersimplex(p, n, k, lab):
        raise ValueError("labeling does not match the hypersimplex incidences")
    inc = p.incidence()
    col_of = {}
    for j in range(p.n_vertices):
        S = tuple(i for i in range(n) if inc[lab[n + i]][j])
        col_of[S] = j
    order = [col_of[S] for S in combinations(range(n), k)]
    rows = [[p.value(f, j) for j in order] for f in lab]
    return SlackMatrix(
        ExactMatrix(rows, ncols=len(order)),
        row_labels(n),
        tuple(subset_label(S) for S in combinations(range(n), k)),
        name=name,
        dim=p.affine_dim,
    )


class Facet(NamedTuple):
    spec: HypersimplexSpec
    columns: tuple[int, ...]
    is_simplex: bool


def _facet(spec, i: int, kind: str) -> Facet:
    s = _spec(spec)
    if not s.proper:
        raise ValueError(f"{s} is not a proper hypersimplex")
    if not 1 <= i <= s.n:
        raise ValueError(f"facet index {i} out of range")
    x = i - 1
    cols = subsets(s)
    if kind == "F":
        sub = HypersimplexSpec(s.n - 1, s.k)
        picked = tuple(j for j, S in enumerate(cols) if x not in S)
    else:
        sub = HypersimplexSpec(s.n - 1, s.k - 1)
        picked = tuple(j for j, S in enumerate(cols) if x in S)
    return Facet(sub, picked, not sub.proper)


def f_facet(spec, i: int) -> Facet:
    """The facet x_i = 0, isomorphic to Delta(n-1, k)."""
    return _facet(spec, i, "F")


def g_facet(spec, i: int) -> Facet:
    """The facet x_i = 1, isomorphic to Delta(n-1, k-1)."""
    return _facet(spec, i, "G")


def slack_rank(S: SlackMatrix) -> int:
    return rank(S.entries)


def g_pattern_matrix(n: int, k: int) -> SlackMatrix:
    """0/1 matrix with rows [n] and columns the (n-k)-subsets S, positive iff x in S."""
    cols = list(combinations(range(n), n - k))
    rows = [[int(x in S) for S in cols] for x in range(n)]
    return SlackMatrix(
        ExactMatrix(rows),
        tuple(f"x{x + 1}" for x in range(n)),
        tuple(subset_label(S) for S in cols),
        name=f"G({n},{k})",
    )


def complement_column(n: int, col: Sequence[int]) -> tuple[int, ...]:
    """Map a 1-based (n-k)-subset label of G(n, k) to the k-subset label of its complement."""
    cs = set(col)
    return tuple(i for i in range(1, n + 1) if i not in cs)


def num_vertices(spec) -> int:
    s = _spec(spec)
    return math.comb(s.n, s.k)

