from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.covering import (
    Covering,
    MatrixMismatch,
    Rectangle,
    bound_ledger,
    compose_hypersimplex_cover,
    fooling_pairs,
    greedy_cover,
    large_fooling_set,
    random_batch_size,
    randomized_cover_gnk,
    row_cover,
    singleton_cover_gnk,
    verify_cover,
)
from hyperx.hypersimplex import SlackMatrix, g_pattern_matrix, slack_matrix_standard

from oracles import brute_fooling_count, brute_rc

# number of unordered fooling pairs of the (4,2) slack matrix, from the brute-force oracle
N42_FOOLING = 192


def identity(n):
    return SlackMatrix.from_rows([[int(i == j) for j in range(n)] for i in range(n)])


def test_row_cover_of_g_part():
    G = g_pattern_matrix(7, 3)
    c = row_cover(G)
    assert c.size == 7 and verify_cover(G, c)


def test_empty_cover_fails():
    S = slack_matrix_standard((4, 2))
    check = verify_cover(S, Covering(()))
    assert not check and check.violation == (0, 0)


def test_invalid_rectangle_reported():
    S = slack_matrix_standard((4, 2))
    check = verify_cover(S, Covering((Rectangle((0, 1), (0, 1)),)))
    assert not check and check.reason.startswith("rectangle")


def test_matrix_mismatch():
    S = slack_matrix_standard((4, 2))
    with pytest.raises(MatrixMismatch):
        verify_cover(S, Covering((), "hypersimplex(5,2)"))


def test_rectangles_are_canonical():
    c = Covering((Rectangle((2, 1, 1), (3, 0)), Rectangle((1, 2), (0, 3))))
    assert c.size == 1 and c.rectangles[0] == Rectangle((1, 2), (0, 3))


def test_fooling_pair_example():
    S = slack_matrix_standard((4, 2))
    cols = list(S.col_labels)
    a = (0, cols.index((1, 2)))
    b = (1, cols.index((2, 3)))
    assert S[0, cols.index((2, 3))] == 0
    pairs = {(p.first, p.second) for p in fooling_pairs(S)}
    assert (a, b) in pairs


def test_fooling_pair_count_matches_brute_force():
    S = slack_matrix_standard((4, 2))
    assert len(fooling_pairs(S)) == brute_fooling_count(S.pattern) == N42_FOOLING


def test_same_row_pairs_never_fool():
    S = slack_matrix_standard((4, 2))
    for p in fooling_pairs(S):
        assert p.first[0] != p.second[0] and p.first[1] != p.second[1]


def test_greedy_identity():
    assert greedy_cover(identity(5)).size == 5


def test_greedy_examples():
    c = greedy_cover(slack_matrix_standard((4, 2)))
    assert 6 <= c.size <= 8
    assert greedy_cover(slack_matrix_standard((10, 2))).size <= 20


def test_all_positive_matrix_has_one_rectangle():
    S = SlackMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert greedy_cover(S).size == 1 == brute_rc(S.pattern)


def test_random_cover_small():
    res = randomized_cover_gnk(4, 2, 20, seed=1)
    assert res.success and res.batch_size == math.ceil(math.e * 9 * math.log(4)) == 34
    assert res.covering.size <= 34 and verify_cover(g_pattern_matrix(4, 2), res.covering)


def test_random_cover_is_seeded():
    a = randomized_cover_gnk(6, 2, 5, seed=7)
    b = randomized_cover_gnk(6, 2, 5, seed=7)
    assert a.covering == b.covering


def test_singleton_cover():
    for n, k in [(5, 2), (7, 3)]:
        c = singleton_cover_gnk(n, k)
        assert c.size == n and verify_cover(g_pattern_matrix(n, k), c)


def test_composed_cover():
    g = randomized_cover_gnk(6, 2, 20, seed=0).covering
    full = compose_hypersimplex_cover(6, 2, g)
    assert full.size <= 6 + g.size
    assert verify_cover(slack_matrix_standard((6, 2)), full)


def test_random_batch_size():
    assert random_batch_size(4, 2) == 34


def test_bound_ledger_examples():
    assert bound_ledger(5, 2).exact == 9
    assert bound_ledger(5, 3).exact == 9
    assert bound_ledger(4, 2).exact == 6
    assert bound_ledger(7, 3).exact == 14
    assert bound_ledger(6, 1).exact == 6
    assert bound_ledger(8, 2).exact == 16
    assert bound_ledger(9, 4).exact == 18


def test_bound_ledger_combinatorial():
    led = bound_ledger(9, 2, "combinatorial")
    assert led.bound("genericity formula") == 9 + 4 + 1
    # facet monotonicity from the certified rc of the (6,2) case is stronger here
    assert led.lower == 15 and led.upper == 18
    assert bound_ledger(8, 4, "combinatorial").exact == 16


def test_bound_ledger_trace_is_descriptive():
    for side, value, reason in bound_ledger(7, 2).trace:
        assert side in ("lower", "upper") and reason and isinstance(value, int)


@given(st.lists(st.lists(st.booleans(), min_size=4, max_size=4), min_size=2, max_size=5))
@settings(max_examples=60, deadline=None)
def test_greedy_and_fooling_bracket_brute_rc(rows):
    S = SlackMatrix.from_rows([[int(x) for x in r] for r in rows])
    if not S.support_size():
        return
    c = greedy_cover(S)
    assert verify_cover(S, c)
    exact = brute_rc(S.pattern)
    assert len(large_fooling_set(S)) <= exact <= c.size
    for p in fooling_pairs(S):
        for rect in c:
            cells = set(rect.cells())
            assert not (p.first in cells and p.second in cells)
