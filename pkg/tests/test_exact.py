from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.exact import (
    ExactMatrix,
    ExactScalar,
    RadicandMismatch,
    as_exact,
    determinant,
    inverse,
    nullspace,
    positive_scaling_between,
    principal_minor_check,
    rank,
    sign,
)

from oracles import brute_rank, cofactor_det

small = st.fractions(min_value=-20, max_value=20, max_denominator=9)
sqrt6 = st.builds(lambda a, b: ExactScalar(a, b, 6), small, small)


def test_radicand_folding():
    assert ExactScalar(0, 1, 4) == 2
    assert ExactScalar(0, 1, 12) == ExactScalar(0, 2, 3)
    assert ExactScalar(1, 0, 6).is_rational


def test_sqrt6_identities():
    s = ExactScalar.sqrt(6)
    assert s * s == 6
    a, b = 5 + 2 * s, 5 - 2 * s
    assert a * b == 1
    assert sign(b) == 1 and b < 1 < a


def test_mixed_radicands_refused():
    with pytest.raises(RadicandMismatch):
        ExactScalar.sqrt(2) + ExactScalar.sqrt(3)


def test_floats_refused():
    with pytest.raises(TypeError):
        as_exact(0.5)


@given(sqrt6, sqrt6, sqrt6)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    if x != 0:
        assert x * (1 / x) == 1


@given(sqrt6)
def test_sign_matches_float(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert sign(x) == (1 if f > 0 else -1)
    assert sign(x) == 0 if x == 0 else sign(x) != 0


@given(sqrt6, sqrt6)
def test_order_consistent_with_subtraction(x, y):
    assert (x < y) == (sign(y - x) > 0)


int_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))


@given(int_matrix)
@settings(max_examples=60)
def test_determinant_matches_cofactor(rows):
    assert determinant(ExactMatrix(rows)) == cofactor_det(rows)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=60)
def test_rank_matches_minors(rows):
    assert rank(ExactMatrix(rows)) == brute_rank(rows)


@given(int_matrix)
@settings(max_examples=40)
def test_inverse_roundtrip(rows):
    m = ExactMatrix(rows)
    if determinant(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == ExactMatrix.identity(m.nrows)


def test_sqrt6_determinant_matches_cofactor():
    s = ExactScalar.sqrt(6)
    rows = [[1, s, 2], [s, 3, 1 - s], [Fraction(1, 2), 1, s]]
    assert determinant(ExactMatrix(rows)) == cofactor_det([[as_exact(x) for x in r] for r in rows])


def test_nullspace():
    basis = nullspace([[1, 1, 1], [1, -1, 0]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] + v[2] == 0 and v[0] - v[1] == 0


def test_principal_minor_check():
    # every principal 2x2 minor of this matrix is singular
    assert principal_minor_check(ExactMatrix([[-1, 2], [Fraction(1, 2), -1]]), 2)
    assert not principal_minor_check(ExactMatrix([[-1, 2], [1, -1]]), 2)


def test_positive_scaling():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[2, 12], [3, 12]])
    r, c = positive_scaling_between(a, b)
    assert all(r[i] * a[i, j] * c[j] == b[i, j] for i in range(2) for j in range(2))
    assert positive_scaling_between(a, ExactMatrix([[1, 2], [3, 5]])) is None
    assert positive_scaling_between(a, ExactMatrix([[-1, 2], [3, 4]])) is None


def test_json_roundtrip():
    s = ExactScalar.sqrt(6)
    m = ExactMatrix([[1, s], [Fraction(1, 3), 5 - 2 * s]])
    assert ExactMatrix.from_json(m.to_json()) == m
