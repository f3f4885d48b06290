from __future__ import annotations

from itertools import product as cartesian

from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.covering import bound_ledger
from hyperx.extensions import (
    Extension,
    counterexample_sq_oct,
    delta52_base,
    delta52_extension,
    polygon,
    product,
    pyramid,
    simplex,
)
from hyperx.hypersimplex import vertices
from hyperx.polytope import hull
from hyperx.sat import rc_exact

from oracles import brute_rc

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_prism():
    p = product(simplex(2), simplex(1))
    assert (p.n_facets, p.n_vertices) == (5, 6)


def test_square_times_triangle():
    assert product(polygon(SQUARE), simplex(2)).n_facets == 7


def test_product_with_point():
    point = hull([(3,)], allow_lower_dim=True)
    p = product(polygon(SQUARE), point)
    assert p.n_facets == 4 and p.n_vertices == 4


def test_product_matches_hull():
    p = product(polygon(SQUARE), simplex(2))
    q = hull(list(p.vertices))
    assert q.n_facets == p.n_facets and q.vertex_set() == p.vertex_set()


def test_pyramids():
    seg = hull([(0,), (1,)])
    assert pyramid(seg).n_facets == 3
    assert pyramid(polygon(SQUARE)).n_facets == 5


def test_delta52_extension():
    q = delta52_base()
    assert (q.n_vertices, q.n_facets) == (8, 7)
    e = delta52_extension()
    assert e.size == 9 and e.verify()
    assert e.target.vertex_set() == hull(vertices((5, 2)), allow_lower_dim=True).vertex_set()
    assert bound_ledger(5, 2).upper <= e.size


def test_extension_json_roundtrip():
    e = delta52_extension()
    f = Extension.from_json(e.to_json())
    assert f.size == 9 and f.verify()


def test_sq_oct():
    so = counterexample_sq_oct()
    assert so.q.n_facets == 7 and so.q.n_vertices == 12
    assert so.octagon().n_vertices == 8 and so.square().n_vertices == 4
    assert not (so.p.tight_vertices(so.octagon_facet) & so.p.tight_vertices(so.square_facet))
    S = so.octagon_slack()
    assert rc_exact(S).value == 6 == brute_rc(S.pattern)


def test_product_with_simplex_adds_k_plus_one():
    e = delta52_extension()
    for k in (1, 2):
        assert product(e.ext, simplex(k)).n_facets == e.size + k + 1


boxes = st.lists(st.integers(1, 3), min_size=1, max_size=2)


@given(boxes, boxes)
@settings(max_examples=20, deadline=None)
def test_product_counts(a, b):
    p = hull(list(cartesian(*[(0, x) for x in a])))
    q = hull(list(cartesian(*[(0, x) for x in b])))
    r = product(p, q)
    assert r.n_facets == p.n_facets + q.n_facets
    assert r.n_vertices == p.n_vertices * q.n_vertices
    assert hull(list(r.vertices)).n_facets == r.n_facets
