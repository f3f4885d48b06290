from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.exact import ExactScalar
from hyperx.polytope import (
    AffineMap,
    DegenerateError,
    Polytope,
    SizeLimitError,
    affine_hull,
    evaluate,
    hull,
    is_combinatorial_hypersimplex,
    project,
)

from oracles import brute_facets


def cube(d):
    return [tuple(v) for v in product((0, 1), repeat=d)]


def test_cube_3():
    p = hull(cube(3))
    assert (p.n_vertices, p.n_facets) == (8, 6)
    assert all(len(p.tight_vertices(f)) == 4 for f in range(6))


def test_octahedron():
    pts = []
    for i in range(3):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(3)))
    p = hull(pts)
    assert (p.n_vertices, p.n_facets) == (6, 8)


def test_interior_points_dropped():
    p = hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert p.n_vertices == 4 and p.n_facets == 4


def test_every_vertex_satisfies_every_inequality():
    p = hull(cube(4))
    for h in p.inequalities:
        assert all(evaluate(h, v) >= 0 for v in p.vertices)


def test_lower_dimensional():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    with pytest.raises(DegenerateError):
        hull(pts)
    p = hull(pts, allow_lower_dim=True)
    assert p.affine_dim == 2 and p.n_facets == 3 and len(p.equations) == 1
    dim, _, eqs = affine_hull(pts)
    assert dim == 2 and len(eqs) == 1


def test_size_cap():
    with pytest.raises(SizeLimitError):
        hull([tuple(range(10))])


def test_sqrt6_coordinates():
    s = ExactScalar.sqrt(6)
    p = hull([(0, 0), (1, 0), (0, 1), (s / 5, s / 5)])
    # s/5 * 2 = 0.98 < 1, so the fourth point is interior
    assert p.n_vertices == 3
    q = hull([(0, 0), (1, 0), (0, 1), (s / 4, s / 4)])
    assert q.n_vertices == 4


def test_projection():
    p = hull(cube(3))
    img = project(p, AffineMap.coordinate_projection(3, (0, 1)))
    assert img.n_vertices == 4


def test_json_roundtrip():
    p = hull(cube(3))
    q = Polytope.from_json(p.to_json())
    assert q.vertex_set() == p.vertex_set() and q.n_facets == p.n_facets


def test_combinatorial_hypersimplex_needs_right_facet_count():
    with pytest.raises(ValueError):
        is_combinatorial_hypersimplex(hull(cube(3)), 4, 2, list(range(8)))


coords = st.integers(-4, 4)


@given(st.lists(st.tuples(coords, coords, coords), min_size=5, max_size=9, unique=True))
@settings(max_examples=40, deadline=None)
def test_hull_matches_brute_force(points):
    try:
        p = hull(points)
    except DegenerateError:
        return
    brute = brute_facets(points)
    verts = set()
    for i in range(len(points)):
        tight = [t for t in brute if i in t]
        if tight and frozenset.intersection(*tight) == {i}:
            verts.add(i)
    index = {tuple(Fraction(x) for x in pt): i for i, pt in enumerate(points)}
    assert {index[tuple(v)] for v in p.vertices} == verts
    got = {frozenset(index[tuple(p.vertices[j])] for j in p.tight_vertices(f)) for f in range(p.n_facets)}
    assert len(got) == p.n_facets
    assert got == {t & verts for t in brute}
