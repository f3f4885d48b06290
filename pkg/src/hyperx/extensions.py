"""Explicit extensions (products, pyramids, a 9-facet lift of the (5,2)-hypersimplex)
and a 4-polytope whose 3-dimensional shadow has an octagon and a square as facets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hypersimplex import SlackMatrix, vertices as hypersimplex_vertices
from .polytope import AffineMap, Polytope, PolytopeError, hull, project


class ExtensionError(RuntimeError):
    """A construction failed its own verification."""


@dataclass(frozen=True)
class Extension:
    ext: Polytope
    map: AffineMap
    target: Polytope

    @property
    def size(self) -> int:
        return self.ext.n_facets

    def verify(self) -> bool:
        image = project(self.ext, self.map, allow_lower_dim=True)
        return image.vertex_set() == self.target.vertex_set()

    def to_json(self) -> dict:
        return {"ext": self.ext.to_json(), "map": self.map.to_json(), "target": self.target.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Extension":
        return cls(Polytope.from_json(data["ext"]), AffineMap.from_json(data["map"]),
                   Polytope.from_json(data["target"]))


def _both(p: Polytope) -> Polytope:
    if p.vertices is None or p.inequalities is None:
        if p.vertices is None:
            raise PolytopeError("need the vertex representation")
        return hull(p.vertices, allow_lower_dim=True)
    return p


def product(p: Polytope, q: Polytope) -> Polytope:
    """Cartesian product; facets add up and vertices multiply."""
    p, q = _both(p), _both(q)
    dp, dq = p.dim, q.dim
    zero = Fraction(0)
    verts = [a + b for a in p.vertices for b in q.vertices]
    ineqs = [h + (zero,) * dq for h in p.inequalities]
    ineqs += [(h[0],) + (zero,) * dp + h[1:] for h in q.inequalities]
    eqs = [e + (zero,) * dq for e in p.equations]
    eqs += [(e[0],) + (zero,) * dp + e[1:] for e in q.equations]
    return Polytope(dp + dq, vertices=verts, inequalities=ineqs, equations=eqs)


def pyramid(p: Polytope, apex_height=1, apex_base: Sequence | None = None) -> Polytope:
    """Pyramid in one extra coordinate, apex at height ``apex_height``.

    The apex sits over the vertex barycenter unless ``apex_base`` is given.
    """
    if p.vertices is None:
        raise PolytopeError("need the vertex representation")
    if apex_height == 0:
        raise ValueError("apex height must be nonzero")
    if apex_base is None:
        m = len(p.vertices)
        apex_base = tuple(sum(v[i] for v in p.vertices) / Fraction(m) for i in range(p.dim))
    pts = [tuple(v) + (Fraction(0),) for v in p.vertices]
    pts.append(tuple(Fraction(x) for x in apex_base) + (Fraction(apex_height),))
    return hull(pts, allow_lower_dim=True)


def simplex(d: int) -> Polytope:
    """The standard d-simplex, conv(0, e_1, ..., e_d)."""
    pts = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(-1, d)]
    return hull(pts)


def polygon(points: Sequence[Sequence]) -> Polytope:
    return hull(points)


def delta52_extension(removed: tuple[tuple[int, ...], tuple[int, ...]] = ((0, 1), (2, 3))) -> Extension:
    """A 9-facet polytope projecting onto the (5, 2)-hypersimplex.

    Q keeps the 8 vertices other than the two (disjoint-support) ``removed``
    ones and has 7 facets. Each removed vertex becomes the apex of a pyramid
    step, lifted by 1 in its own fresh coordinate; dropping the two fresh
    coordinates maps the apexes back onto the removed vertices.
    """
    a, b = (frozenset(s) for s in removed)
    if a & b or len(a) != 2 or len(b) != 2:
        raise ValueError("removed vertices must be two disjoint pairs")
    verts = hypersimplex_vertices((5, 2))
    target = hull(verts, allow_lower_dim=True)
    gone = [tuple(int(i in s) for i in range(5)) for s in (a, b)]
    kept = [v for v in verts if v not in gone]
    q = hull(kept, allow_lower_dim=True)
    if (q.n_vertices, q.n_facets) != (8, 7):
        raise ExtensionError(f"Q has {q.n_vertices} vertices and {q.n_facets} facets, expected 8 and 7")
    ext = pyramid(pyramid(q, 1, gone[0]), 1, gone[1] + (0,))
    if ext.n_facets != 9:
        raise ExtensionError(f"the 2-fold pyramid has {ext.n_facets} facets, expected 9")
    amap = AffineMap.coordinate_projection(7, range(5))
    out = Extension(ext, amap, target)
    if not out.verify():
        raise ExtensionError("projection does not reproduce the hypersimplex")
    return out


def delta52_base() -> Polytope:
    """Q: the (5, 2)-hypersimplex without the vertices e1+e2 and e3+e4."""
    verts = [v for v in hypersimplex_vertices((5, 2)) if v not in ((1, 1, 0, 0, 0), (0, 0, 1, 1, 0))]
    return hull(verts, allow_lower_dim=True)


SQ_OCT_COLUMNS = (
    (1, -1, -1, 1, 2, 2, -2, -2, 1, -1, 1, -1),
    (2, 2, -2, -2, 1, -1, -1, 1, 1, 1, -1, -1),
    (1, 1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1),
    (1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1),
)


@dataclass(frozen=True)
class SquareOctagon:
    q: Polytope
    p: Polytope
    octagon_facet: int
    square_facet: int

    def face_polygon(self, facet: int) -> Polytope:
        pts = [self.p.vertices[j] for j in sorted(self.p.tight_vertices(facet))]
        return hull(pts, allow_lower_dim=True)

    def octagon(self) -> Polytope:
        return self.face_polygon(self.octagon_facet)

    def square(self) -> Polytope:
        return self.face_polygon(self.square_facet)

    def octagon_slack(self) -> SlackMatrix:
        return SlackMatrix.from_polytope(self.octagon(), name="octagon")


def counterexample_sq_oct() -> SquareOctagon:
    """Q = hull of 12 points in R^4 (7 facets); P = its projection to the first three coordinates.

    P has an octagon facet and a disjoint square facet, yet P is the image of
    a 7-facet polytope.
    """
    pts = [tuple(row[c] for row in SQ_OCT_COLUMNS) for c in range(12)]
    q = hull(pts)
    if q.n_facets != 7:
        raise ExtensionError(f"Q has {q.n_facets} facets, expected 7")
    p = project(q, AffineMap.coordinate_projection(4, range(3)))
    sizes = {f: len(p.tight_vertices(f)) for f in range(p.n_facets)}
    octs = [f for f, s in sizes.items() if s == 8]
    squares = [f for f, s in sizes.items() if s == 4
               and any(not (p.tight_vertices(f) & p.tight_vertices(o)) for o in octs)]
    if not octs or not squares:
        raise ExtensionError("P lacks an octagon facet with a disjoint square facet")
    sq = squares[0]
    oc = next(o for o in octs if not (p.tight_vertices(sq) & p.tight_vertices(o)))
    return SquareOctagon(q, p, oc, sq)
