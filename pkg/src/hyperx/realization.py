"""G-matrices, genericity tests and edge-ratio realizations of (n, 2)-hypersimplices."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import (
    ExactMatrix,
    ExactScalar,
    as_exact,
    determinant,
    inverse,
    principal_minor_check,
    rank,
    sign,
)
from .polytope import Polytope, facet_labeling_from_subsets, hull, normalize_labeling


@dataclass(frozen=True)
class GMatrix:
    """Columns g_1..g_n are the G-facet normals once the F-facets are the coordinate forms."""

    entries: ExactMatrix
    k: int | None = None

    def __post_init__(self):
        if not self.entries.is_square:
            raise ValueError("a G-matrix is square")

    @property
    def n(self) -> int:
        return self.entries.nrows

    def determinant(self):
        return determinant(self.entries)

    def principal_minors_ok(self, k: int | None = None) -> bool:
        k = self.k if k is None else k
        if k is None:
            raise ValueError("k unknown")
        return principal_minor_check(self.entries, k)


@dataclass(frozen=True)
class RatioMatrix:
    """Edge ratios rho_ij > 0 off the diagonal, -1 on it, with rho_ij * rho_ji = 1."""

    rho: ExactMatrix

    def __post_init__(self):
        m = self.rho
        if not m.is_square:
            raise ValueError("ratio matrix must be square")
        for i in range(m.nrows):
            if m[i, i] != -1:
                raise ValueError(f"diagonal entry {i} is not -1")
            for j in range(m.nrows):
                if i == j:
                    continue
                if sign(m[i, j]) <= 0:
                    raise ValueError(f"ratio ({i}, {j}) is not positive")
                if m[i, j] * m[j, i] != 1:
                    raise ValueError(f"ratios ({i}, {j}) and ({j}, {i}) are not reciprocal")

    @classmethod
    def from_rows(cls, rows) -> "RatioMatrix":
        return cls(ExactMatrix(rows))

    @classmethod
    def from_upper(cls, n: int, upper: dict[tuple[int, int], object]) -> "RatioMatrix":
        """Build from rho_ij for i < j (0-based); missing pairs default to 1."""
        rows = [[as_exact(-1 if i == j else 1) for j in range(n)] for i in range(n)]
        for (i, j), x in upper.items():
            x = as_exact(x)
            rows[i][j] = x
            rows[j][i] = as_exact(1 / x)
        return cls(ExactMatrix(rows))

    @property
    def n(self) -> int:
        return self.rho.nrows

    def __getitem__(self, idx):
        return self.rho[idx]

    def to_json(self) -> dict:
        data = self.rho.to_json()
        data["reciprocal"] = True
        return data

    @classmethod
    def from_json(cls, data: dict) -> "RatioMatrix":
        return cls(ExactMatrix.from_json(data))


def _check_regime(n: int, k: int):
    if not (2 <= k and 2 * k <= n):
        raise ValueError(f"need 2 <= k <= n/2, got (n, k) = ({n}, {k})")


def standard_g_matrix(n: int, k: int) -> GMatrix:
    """1 off the diagonal and 1-k on it."""
    _check_regime(n, k)
    rows = [[1 - k if i == j else 1 for j in range(n)] for i in range(n)]
    return GMatrix(ExactMatrix(rows), k)


def standard_g_determinant(n: int, k: int) -> int:
    """(n-k)(-k)^(n-1): eigenvalue n-k once and -k with multiplicity n-1."""
    return (n - k) * (-k) ** (n - 1)


def is_g_generic(g) -> bool:
    """The G-facet hyperplanes are not concurrent iff det(g_1..g_n) is nonzero."""
    m = g.entries if isinstance(g, GMatrix) else g.rho if isinstance(g, RatioMatrix) else g
    return determinant(m) != 0


def g_matrix_of_ratios(ratios: RatioMatrix) -> GMatrix:
    return GMatrix(ratios.rho, 2)


def singular_62_ratios() -> RatioMatrix:
    """A (6, 2) ratio matrix whose G-facet hyperplanes meet in a point."""
    a = ExactScalar(5, 2, 6)
    b = ExactScalar(5, -2, 6)
    return RatioMatrix.from_upper(6, {(0, 1): a, (0, 2): b, (1, 2): a})


def projective_normalize(ratios: RatioMatrix) -> RatioMatrix:
    """Scale rows and columns so the first row and column become 1 off the diagonal.

    Row i is multiplied by rho_{1i} and column i by rho_{i1}; the product of
    the two factors on a diagonal entry is 1, so the diagonal stays -1.
    """
    m = ratios.rho
    n = m.nrows
    factor = [as_exact(1)] + [m[0, i] for i in range(1, n)]
    cfactor = [as_exact(1)] + [m[i, 0] for i in range(1, n)]
    rows = [[as_exact(m[r, c] * factor[r] * cfactor[c]) for c in range(n)] for r in range(n)]
    return RatioMatrix(ExactMatrix(rows))


def edge_point(n: int, i: int, j: int, rho) -> tuple:
    """(e_i + rho e_j) / (1 + rho): splits [e_i, e_j] with |e_i p| / |e_j p| = rho."""
    s = 1 / (1 + rho)
    return tuple(as_exact(s) if t == i else as_exact(rho * s) if t == j else Fraction(0) for t in range(n))


def sample_n2(ratios: RatioMatrix) -> tuple[Polytope, dict[str, int]]:
    """Hull of the edge points p_ij (i < j) of the standard simplex, labeled F1..Fn, G1..Gn.

    F_i is the facet x_i = 0; G_i is the facet through all p_ij, j != i.
    """
    n = ratios.n
    pairs = list(combinations(range(n), 2))
    points = [edge_point(n, i, j, ratios[i, j]) for i, j in pairs]
    p = hull(points, allow_lower_dim=True)
    index = {v: t for t, v in enumerate(p.vertices)}
    order = [index[pt] for pt in points]
    subsets = [None] * len(points)
    for t, pair in zip(order, pairs):
        subsets[t] = pair
    labeling = facet_labeling_from_subsets(p, n, subsets)
    return p, labeling


def vertex_subsets(p: Polytope, labeling, n: int) -> list[tuple[int, ...]]:
    """The index set S of each vertex (0-based), read off the G-facets containing it."""
    lab = normalize_labeling(labeling, n)
    inc = p.incidence()
    return [tuple(i for i in range(n) if inc[lab[n + i]][j]) for j in range(p.n_vertices)]


def _affinely_independent(p: Polytope, count: int) -> list[int]:
    chosen: list[int] = []
    rows: list[tuple] = []
    for j, v in enumerate(p.vertices):
        trial = rows + [(1,) + tuple(v)]
        if rank(ExactMatrix(trial)) == len(trial):
            rows = trial
            chosen.append(j)
            if len(chosen) == count:
                return chosen
    raise ValueError("not enough affinely independent vertices")


def facet_value_matrix(p: Polytope, facets: Sequence[int], basis: Sequence[int]) -> ExactMatrix:
    return ExactMatrix([[p.value(f, j) for j in basis] for f in facets])


def is_f_generic(p: Polytope, labeling, n: int | None = None) -> bool:
    """The F-facet hyperplanes are linearly independent as homogeneous forms."""
    n = len(labeling) // 2 if n is None else n
    lab = normalize_labeling(labeling, n)
    basis = _affinely_independent(p, n)
    return determinant(facet_value_matrix(p, lab[:n], basis)) != 0


def is_g_generic_polytope(p: Polytope, labeling, n: int | None = None) -> bool:
    n = len(labeling) // 2 if n is None else n
    lab = normalize_labeling(labeling, n)
    basis = _affinely_independent(p, n)
    return determinant(facet_value_matrix(p, lab[n:], basis)) != 0


def g_matrix_from_realization(p: Polytope, labeling, k: int, n: int | None = None) -> GMatrix:
    """G-facet forms in the coordinates where the F-facet forms are x_1..x_n.

    Linear forms on the homogenized affine hull are determined by their values
    on n affinely independent vertices; with F and G the value matrices,
    column i of the result holds the coefficients of G_i, i.e. (G F^-1)^T.
    """
    n = len(labeling) // 2 if n is None else n
    _check_regime(n, k)
    lab = normalize_labeling(labeling, n)
    if p.affine_dim != n - 1:
        raise ValueError(f"expected a polytope of dimension {n - 1}")
    basis = _affinely_independent(p, n)
    fm = facet_value_matrix(p, lab[:n], basis)
    gm = facet_value_matrix(p, lab[n:], basis)
    try:
        finv = inverse(fm)
    except ZeroDivisionError:
        raise ValueError("F-facets do not bound a simplex (not F-generic)") from None
    return GMatrix((gm @ finv).transpose(), k)


def random_ratio(rng: random.Random, max_den: int = 12):
    """Roughly log-uniform rational in [1/10, 10] with a small denominator."""
    x = 10 ** rng.uniform(-1, 1)
    q = Fraction(x).limit_denominator(max_den)
    return min(max(q, Fraction(1, 10)), Fraction(10))


def random_ratio_matrix(n: int, seed: int | random.Random) -> RatioMatrix:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return RatioMatrix.from_upper(n, {(i, j): random_ratio(rng) for i, j in combinations(range(n), 2)})


def perturbed_g_matrix(ratios: RatioMatrix, i: int, j: int, delta=Fraction(1, 7)) -> GMatrix:
    """The ratio matrix with rho_ij shifted by ``delta``, breaking reciprocity."""
    rows = [list(r) for r in ratios.rho.rows]
    rows[i][j] = as_exact(rows[i][j] + delta)
    return GMatrix(ExactMatrix(rows), 2)


# the (5, 2) realization whose generic refined covering number is 10; columns
# are the vertices, listed in lexicographic order of their supports
SPECIAL_52_COLUMNS = (
    (35, 35, 35, 35, 0, 0, 0, 0, 0, 0),
    (35, 0, 0, 0, 50, 42, 20, 0, 0, 0),
    (0, 35, 0, 0, 20, 0, 0, 56, 60, 0),
    (0, 0, 35, 0, 0, 28, 0, 14, 0, 42),
    (0, 0, 0, 35, 0, 0, 50, 0, 10, 28),
)


def special_52_realization() -> tuple[Polytope, dict[str, int]]:
    points = [tuple(row[c] for row in SPECIAL_52_COLUMNS) for c in range(10)]
    p = hull(points, allow_lower_dim=True)
    subsets = [tuple(i for i in range(5) if v[i]) for v in p.vertices]
    return p, facet_labeling_from_subsets(p, 5, subsets)


def realization_dimension(n: int) -> int:
    """Number of free ratios after projective normalization: C(n-1, 2)."""
    return math.comb(n - 1, 2)
