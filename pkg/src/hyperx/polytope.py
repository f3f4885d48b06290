"""Small exact polytopes: vertex/facet conversion, projection and incidences.

Facets are enumerated by the double description method on the homogenized
point set.  Lower-dimensional point sets are handled in a coordinate chart of
their affine hull; the resulting inequalities are lifted back to ambient
coordinates and the affine hull is recorded as ``equations``.

Inequalities are tuples ``(l0, l1, ..., ld)`` meaning ``l0 + sum l_j x_j >= 0``.
For cones (``cone=True``) there is no offset entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exact import (
    ExactMatrix,
    ExactScalar,
    as_exact,
    nullspace,
    rank,
    rref,
    scalar_from_json,
    scalar_to_json,
    sign,
)

MAX_DIM = 7
MAX_POINTS = 400


class PolytopeError(ValueError):
    pass


class DegenerateError(PolytopeError):
    def __init__(self, affine_dim: int, ambient_dim: int):
        super().__init__(
            f"points span an affine space of dimension {affine_dim} in R^{ambient_dim}"
        )
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim


class SizeLimitError(PolytopeError):
    pass


def _vec(v) -> tuple:
    return tuple(as_exact(x) for x in v)


def evaluate(form: Sequence, point: Sequence, cone: bool = False):
    """Value of an affine form (or a linear form when ``cone``) at ``point``."""
    if cone:
        total = 0
        for c, x in zip(form, point):
            if c and x:
                total = total + c * x
        return as_exact(total)
    total = form[0]
    for c, x in zip(form[1:], point):
        if c and x:
            total = total + c * x
    return as_exact(total)


def _is_rational(vec) -> bool:
    return not any(isinstance(x, ExactScalar) for x in vec)


def normalize_form(vec: Sequence) -> tuple:
    """Positive rescaling to a canonical representative.

    Rational vectors become primitive integer vectors; irrational ones are
    divided by the absolute value of their first nonzero entry.
    """
    if _is_rational(vec):
        fr = [Fraction(x) for x in vec]
        lcm = math.lcm(*(x.denominator for x in fr)) if fr else 1
        ints = [int(x * lcm) for x in fr]
        g = math.gcd(*ints) if ints else 1
        if g == 0:
            return tuple(Fraction(0) for _ in ints)
        return tuple(Fraction(x // g) for x in ints)
    lead = next((x for x in vec if x), None)
    if lead is None:
        return _vec(vec)
    s = abs(lead)
    return tuple(as_exact(x / s) for x in vec)


@dataclass(frozen=True)
class Polytope:
    """A polytope (or, with ``cone``, a pointed polyhedral cone).

    ``dim`` is the ambient dimension.  At least one of ``vertices`` and
    ``inequalities`` is present; ``hull`` populates both.
    """

    dim: int
    vertices: tuple | None = None
    inequalities: tuple | None = None
    equations: tuple = ()
    cone: bool = False
    _incidence: list | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.vertices is None and self.inequalities is None:
            raise PolytopeError("a polytope needs vertices or inequalities")
        width = self.dim if self.cone else self.dim + 1
        if self.vertices is not None:
            vs = tuple(_vec(v) for v in self.vertices)
            if any(len(v) != self.dim for v in vs):
                raise PolytopeError("vertex of wrong dimension")
            object.__setattr__(self, "vertices", vs)
        if self.inequalities is not None:
            hs = tuple(_vec(h) for h in self.inequalities)
            if any(len(h) != width for h in hs):
                raise PolytopeError("inequality of wrong length")
            object.__setattr__(self, "inequalities", hs)
        object.__setattr__(self, "equations", tuple(_vec(e) for e in self.equations))

    @property
    def n_vertices(self) -> int:
        if self.vertices is None:
            raise PolytopeError("vertex representation not computed")
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        if self.inequalities is None:
            raise PolytopeError("inequality representation not computed")
        return len(self.inequalities)

    @property
    def affine_dim(self) -> int:
        return self.dim - len(self.equations)

    def value(self, i: int, j: int):
        """Slack of inequality ``i`` at vertex ``j``."""
        return evaluate(self.inequalities[i], self.vertices[j], self.cone)

    def incidence(self) -> list[list[bool]]:
        if self._incidence is None:
            inc = [
                [evaluate(h, v, self.cone) == 0 for v in self.vertices]
                for h in self.inequalities
            ]
            object.__setattr__(self, "_incidence", inc)
        return self._incidence

    def tight_vertices(self, i: int) -> frozenset[int]:
        return frozenset(j for j, t in enumerate(self.incidence()[i]) if t)

    def vertex_set(self) -> frozenset[tuple]:
        return frozenset(self.vertices)

    @property
    def radicand(self) -> int:
        ds = {x.d for rep in (self.vertices or (), self.inequalities or (), self.equations)
              for v in rep for x in v if isinstance(x, ExactScalar)}
        return ds.pop() if ds else 0

    def to_json(self) -> dict:
        enc = lambda rows: [[scalar_to_json(x) for x in r] for r in rows]  # noqa: E731
        out = {"dim": self.dim, "radicand": self.radicand, "cone": self.cone}
        if self.vertices is not None:
            out["vertices"] = enc(self.vertices)
        if self.inequalities is not None:
            out["inequalities"] = enc(self.inequalities)
        out["equations"] = enc(self.equations)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Polytope":
        d = int(data.get("radicand", 0))
        dec = lambda rows: None if rows is None else [[scalar_from_json(x, d) for x in r] for r in rows]  # noqa: E731
        return cls(
            dim=int(data["dim"]),
            vertices=dec(data.get("vertices")),
            inequalities=dec(data.get("inequalities")),
            equations=dec(data.get("equations", [])) or (),
            cone=bool(data.get("cone", False)),
        )


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset."""

    matrix: ExactMatrix
    offset: tuple = ()

    def __post_init__(self):
        off = _vec(self.offset) if self.offset else tuple(Fraction(0) for _ in range(self.matrix.nrows))
        if len(off) != self.matrix.nrows:
            raise ValueError("offset length does not match the matrix")
        object.__setattr__(self, "offset", off)

    @property
    def domain_dim(self) -> int:
        return self.matrix.ncols

    @property
    def image_dim(self) -> int:
        return self.matrix.nrows

    def __call__(self, point: Sequence) -> tuple:
        if len(point) != self.domain_dim:
            raise ValueError("point has wrong dimension")
        return tuple(as_exact(a + b) for a, b in zip(self.matrix.apply(point), self.offset))

    @classmethod
    def coordinate_projection(cls, dim: int, keep: Sequence[int]) -> "AffineMap":
        return cls(ExactMatrix([[int(j == i) for j in range(dim)] for i in keep], ncols=dim))

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "offset": [scalar_to_json(x) for x in self.offset]}

    @classmethod
    def from_json(cls, data: Mapping) -> "AffineMap":
        m = ExactMatrix.from_json(data["matrix"])
        return cls(m, tuple(scalar_from_json(x, m.radicand) for x in data["offset"]))


# ---------------------------------------------------------------------------
# double description


def _scale_point(h: Sequence) -> tuple:
    """Positive multiple of a homogenized point, integral when rational."""
    if _is_rational(h):
        lcm = math.lcm(*(Fraction(x).denominator for x in h))
        return tuple(int(Fraction(x) * lcm) for x in h)
    return tuple(h)


def _ray_normalize(vec: list) -> list:
    if all(type(x) is int for x in vec):
        g = math.gcd(*vec)
        return [x // g for x in vec] if g > 1 else vec
    lead = next(x for x in vec if x)
    s = abs(lead)
    return [as_exact(x / s) for x in vec]


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def _initial_basis(hs: list[tuple], m: int) -> list[int]:
    chosen: list[int] = []
    rows: list[tuple] = []
    for idx, h in enumerate(hs):
        trial = rows + [h]
        if rank(ExactMatrix(trial)) == len(trial):
            rows = trial
            chosen.append(idx)
            if len(chosen) == m + 1:
                return chosen
    raise DegenerateError(len(chosen) - 1, m)


def _dd_facets(hs: list[tuple], m: int) -> list[list]:
    """Extreme rays of {a in R^{m+1} : a.h >= 0 for all h}, for full-dimensional points."""
    basis = _initial_basis(hs, m)
    binv = _inverse_columns([hs[i] for i in basis])
    rays = [_ray_normalize(list(col)) for col in binv]
    basis_mask = 0
    for i in basis:
        basis_mask |= 1 << i
    zeros = [basis_mask & ~(1 << basis[t]) for t in range(len(basis))]
    need = m - 1
    for idx, h in enumerate(hs):
        if (basis_mask >> idx) & 1:
            continue
        bit = 1 << idx
        vals = [_dot(r, h) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        new_rays = [rays[t] for t in pos] + [rays[t] for t in zer]
        new_zeros = [zeros[t] for t in pos] + [zeros[t] | bit for t in zer]
        for p in pos:
            zp = zeros[p]
            for q in neg:
                common = zp & zeros[q]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for t, zt in enumerate(zeros):
                    if t != p and t != q and (zt & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                ray = [vp * b - vq * a for a, b in zip(rays[p], rays[q])]
                new_rays.append(_ray_normalize(ray))
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
    return rays


def _inverse_columns(rows: list[tuple]) -> list[tuple]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, _ = rref(aug)
    inv_rows = [r[n:] for r in red]
    cols = list(zip(*inv_rows))
    out = []
    for c in cols:
        if _is_rational(c):
            out.append(_scale_point(c))
        else:
            out.append(tuple(c))
    return out


def affine_hull(points: Sequence[Sequence]) -> tuple[int, list[int], list[tuple]]:
    """Return (affine dimension, chart coordinates, hull equations).

    The chart coordinates are pivot columns of the difference vectors, so the
    coordinate projection onto them is injective on the affine hull.
    """
    base = points[0]
    diffs = [[as_exact(a - b) for a, b in zip(p, base)] for p in points[1:]]
    if diffs:
        red, pivots = rref(diffs)
    else:
        pivots = []
    homog = [(Fraction(1),) + tuple(p) for p in points]
    eqs = [normalize_form(e) for e in nullspace(homog)]
    return len(pivots), pivots, eqs


def hull(points: Sequence[Sequence], *, allow_lower_dim: bool = False) -> Polytope:
    """Convex hull of exact points with both representations, irredundant."""
    pts: list[tuple] = []
    seen = set()
    for p in points:
        v = _vec(p)
        if v not in seen:
            seen.add(v)
            pts.append(v)
    if not pts:
        raise PolytopeError("empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise PolytopeError("points of mixed dimension")
    if d > MAX_DIM:
        raise SizeLimitError(f"ambient dimension {d} exceeds the cap of {MAX_DIM}")
    if len(pts) > MAX_POINTS:
        raise SizeLimitError(f"{len(pts)} points exceed the cap of {MAX_POINTS}")
    adim, chart, eqs = affine_hull(pts)
    if adim < d and not allow_lower_dim:
        raise DegenerateError(adim, d)
    if adim == 0:
        return Polytope(d, vertices=pts, inequalities=(), equations=eqs)
    local = [tuple(p[c] for c in chart) for p in pts]
    hs = [_scale_point((Fraction(1),) + p) for p in local]
    rays = _dd_facets(hs, adim)
    # vertices: points whose tight facets have full rank in the chart
    keep = []
    for j, h in enumerate(hs):
        tight = [r for r in rays if _dot(r, h) == 0]
        if len(tight) >= adim and rank(ExactMatrix(tight)) == adim:
            keep.append(j)
    vertices = [pts[j] for j in keep]
    ineqs = []
    for r in rays:
        lifted = [Fraction(0)] * (d + 1)
        lifted[0] = r[0]
        for c, coef in zip(chart, r[1:]):
            lifted[c + 1] = coef
        ineqs.append(normalize_form(lifted))
    ineqs.sort(key=lambda h: tuple(j for j, v in enumerate(vertices) if evaluate(h, v) == 0))
    return Polytope(d, vertices=vertices, inequalities=ineqs, equations=eqs)


def facets_of(p: Polytope) -> int:
    return p.n_facets


def vertices_of(p: Polytope) -> int:
    return p.n_vertices


def project(p: Polytope, amap: AffineMap, *, allow_lower_dim: bool = False) -> Polytope:
    if p.vertices is None:
        raise PolytopeError("projection needs the vertex representation")
    if amap.domain_dim != p.dim:
        raise ValueError("map domain does not match the polytope")
    return hull([amap(v) for v in p.vertices], allow_lower_dim=allow_lower_dim)


def vertex_facet_incidence(p: Polytope) -> list[list[bool]]:
    if p.vertices is None or p.inequalities is None:
        raise PolytopeError("incidence needs both representations")
    return [list(row) for row in p.incidence()]


def homogenize(p: Polytope) -> Polytope:
    """The cone over {1} x P, with generators (1, v) and linear facet forms."""
    verts = None if p.vertices is None else [(Fraction(1),) + v for v in p.vertices]
    return Polytope(p.dim + 1, vertices=verts, inequalities=p.inequalities,
                    equations=p.equations, cone=True)


def normalize_labeling(labeling, n: int) -> list[int]:
    """Accept a mapping {"F1": idx, ..., "Gn": idx} or a sequence [F1..Fn, G1..Gn]."""
    if isinstance(labeling, Mapping):
        try:
            return [labeling[f"F{i}"] for i in range(1, n + 1)] + [
                labeling[f"G{i}"] for i in range(1, n + 1)
            ]
        except KeyError as exc:
            raise ValueError(f"labeling lacks {exc}") from None
    out = list(labeling)
    if len(out) != 2 * n:
        raise ValueError(f"labeling needs {2 * n} entries, got {len(out)}")
    return out


def is_combinatorial_hypersimplex(p: Polytope, n: int, k: int, labeling) -> bool:
    """Labeled check of the vertex-facet incidences of the (n, k)-hypersimplex.

    Each vertex must be tight at ``G_i`` exactly for ``i`` in some k-subset S
    and at ``F_i`` exactly for ``i`` outside S, with every k-subset used once.
    """
    if p.n_facets != 2 * n:
        raise ValueError(f"expected {2 * n} facets, found {p.n_facets}")
    lab = normalize_labeling(labeling, n)
    if sorted(lab) != list(range(2 * n)):
        return False
    inc = p.incidence()
    seen = set()
    for j in range(p.n_vertices):
        in_g = frozenset(i for i in range(n) if inc[lab[n + i]][j])
        in_f = frozenset(i for i in range(n) if inc[lab[i]][j])
        if len(in_g) != k or in_g | in_f != frozenset(range(n)) or in_g & in_f:
            return False
        seen.add(in_g)
    return len(seen) == p.n_vertices == math.comb(n, k)


def facet_labeling_from_subsets(p: Polytope, n: int, subsets: Sequence) -> dict[str, int]:
    """Label facets by incidence given the k-subset (0-based) attached to each vertex."""
    want = {}
    for i in range(n):
        want[f"F{i + 1}"] = frozenset(j for j, s in enumerate(subsets) if i not in s)
        want[f"G{i + 1}"] = frozenset(j for j, s in enumerate(subsets) if i in s)
    by_tight = {}
    for f in range(p.n_facets):
        by_tight.setdefault(p.tight_vertices(f), []).append(f)
    out = {}
    for name, tight in want.items():
        hits = by_tight.get(tight, [])
        if len(hits) != 1:
            raise ValueError(f"no unique facet matches {name}")
        out[name] = hits[0]
    return out


def facet_pairs_parallel(h1: Sequence, h2: Sequence) -> bool:
    """True when two affine forms have opposite-pointing proportional normals."""
    a, b = h1[1:], h2[1:]
    for x, y in combinations(range(len(a)), 2):
        if a[x] * b[y] != a[y] * b[x]:
            return False
    return any(sign(x) * sign(y) < 0 for x, y in zip(a, b) if x and y)
