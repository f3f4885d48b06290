from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperx.covering import fooling_pairs, verify_cover
from hyperx.hypersimplex import SlackMatrix, slack_matrix_of_realization, slack_matrix_standard
from hyperx.realization import special_52_realization
from hyperx.sat import (
    SAT,
    TIMEOUT,
    UNSAT,
    check_model,
    decode_cover,
    encode_grrc,
    encode_rc,
    encode_rrc,
    parse_dimacs,
    parse_model,
    rc_exact,
    solve,
    solve_clauses,
)

from oracles import brute_rc, brute_sat


def special52():
    p, lab = special_52_realization()
    return slack_matrix_of_realization(p, lab, 5, 2, name="special-52")


# -- solver -----------------------------------------------------------------


def test_trivial_unsat():
    assert solve_clauses(1, [[1], [-1]]).status == UNSAT


def test_empty_clause_unsat():
    assert solve_clauses(2, [[1, 2], []]).status == UNSAT


def test_simple_sat_model_checked():
    clauses = [[1, 2], [-1, 3], [-3, -2], [2, 3]]
    res = solve_clauses(3, clauses)
    assert res.status == SAT and check_model(clauses, res.model)


def test_pigeonhole_4_3_unsat():
    var = lambda p, h: 3 * p + h + 1  # noqa: E731
    clauses = [[var(p, h) for h in range(3)] for p in range(4)]
    for h in range(3):
        for p in range(4):
            for q in range(p + 1, 4):
                clauses.append([-var(p, h), -var(q, h)])
    res = solve_clauses(12, clauses)
    assert res.status == UNSAT and res.stats["conflicts"] > 0


def test_conflict_limit_times_out():
    var = lambda p, h: 7 * p + h + 1  # noqa: E731
    clauses = [[var(p, h) for h in range(7)] for p in range(8)]
    for h in range(7):
        for p in range(8):
            for q in range(p + 1, 8):
                clauses.append([-var(p, h), -var(q, h)])
    assert solve_clauses(56, clauses, conflict_limit=5).status == TIMEOUT


clause_st = st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3)


@given(st.lists(clause_st, min_size=1, max_size=30), st.integers(0, 3))
@settings(max_examples=200, deadline=None)
def test_solver_agrees_with_brute_force(clauses, seed):
    res = solve_clauses(6, clauses, seed=seed)
    assert (res.status == SAT) == brute_sat(6, clauses)
    if res.status == SAT:
        assert check_model(clauses, res.model)


def test_seeded_runs_are_identical():
    f = encode_rc(slack_matrix_standard((5, 2)), 9)
    a, b = solve(f, seed=3), solve(f, seed=3)
    assert a.model == b.model
    assert {k: v for k, v in a.stats.items() if k != "wall_time"} == \
        {k: v for k, v in b.stats.items() if k != "wall_time"}


# -- encoders ---------------------------------------------------------------


def test_variable_counts():
    assert encode_rc(slack_matrix_standard((6, 3)), 11).var_count == 1320
    assert encode_rc(slack_matrix_standard((5, 2)), 8).var_count == 400
    assert encode_grrc(special52(), 9).var_count == 450


def test_variable_numbering():
    f = encode_rc(slack_matrix_standard((4, 2)), 3)
    assert f.var(0, 0) == 1 and f.var(2, len(f.cells) - 1) == f.var_count
    assert f.decode_var(f.var(1, 5)) == (1, f.cells[5])


def test_single_cell():
    S = SlackMatrix.from_rows([[0, 0], [0, 3]])
    f = encode_rc(S, 1)
    assert (f.var_count, f.n_clauses) == (1, 1)
    res = solve(f)
    assert res.status == SAT
    cover = decode_cover(f, res.model)
    assert cover.size == 1 and cover.rectangles[0].rows == (1,) and cover.rectangles[0].cols == (1,)


def test_zero_rectangles_is_unsat():
    f = encode_rc(slack_matrix_standard((4, 2)), 0)
    assert f.var_count == 0 and solve(f).status == UNSAT


def test_clause_families_counted():
    S = slack_matrix_standard((6, 3))
    f = encode_rc(S, 11)
    assert f.n_clauses == S.support_size() + 11 * len(fooling_pairs(S))


def test_dimacs_roundtrip():
    f = encode_rc(slack_matrix_standard((4, 2)), 6, symmetry=True)
    nvars, clauses = parse_dimacs(f.to_dimacs())
    assert nvars == f.var_count and clauses == f.clauses


def test_model_import():
    f = encode_rc(slack_matrix_standard((4, 2)), 6)
    res = solve(f)
    text = "s SATISFIABLE\nv " + " ".join(str(x) for x in res.model if x > 0) + " 0\n"
    model = parse_model(text, f.var_count)
    assert model == res.model
    assert verify_cover(f.matrix, decode_cover(f, model))


@pytest.mark.parametrize("symmetry", [False, True])
def test_delta42(symmetry):
    S = slack_matrix_standard((4, 2))
    assert solve(encode_rc(S, 5, symmetry=symmetry)).status == UNSAT
    f = encode_rc(S, 6, symmetry=symmetry)
    res = solve(f)
    assert res.status == SAT
    cover = decode_cover(f, res.model)
    assert cover.size == 6 and verify_cover(S, cover)
    assert sum(len(r) for r in cover) >= S.support_size()


def test_delta52_nine_cover():
    S = slack_matrix_standard((5, 2))
    f = encode_rc(S, 9, symmetry=True)
    cover = decode_cover(f, solve(f).model)
    assert cover.size == 9 and verify_cover(S, cover)


def test_rc_exact_small():
    assert rc_exact(slack_matrix_standard((4, 2))).value == 6
    res = rc_exact(slack_matrix_standard((5, 2)))
    assert res.value == 9 and verify_cover(slack_matrix_standard((5, 2)), res.cover)
    assert res.runs[-1]["status"] == UNSAT and res.runs[-1]["r"] == 8


def test_sat_is_monotone_in_r():
    S = slack_matrix_standard((4, 2))
    statuses = [solve(encode_rc(S, r)).status for r in range(4, 10)]
    first = statuses.index(SAT)
    assert all(s == SAT for s in statuses[first:])


patterns = st.lists(st.lists(st.booleans(), min_size=4, max_size=4), min_size=2, max_size=4)


@given(patterns, st.integers(1, 5), st.booleans())
@settings(max_examples=80, deadline=None)
def test_rc_encoding_matches_brute_force(rows, r, symmetry):
    S = SlackMatrix.from_rows([[int(x) for x in row] for row in rows])
    if not S.support_size():
        return
    f = encode_rc(S, r, symmetry=symmetry)
    res = solve(f)
    assert (res.status == SAT) == (brute_rc(S.pattern) <= r)
    if res.status == SAT:
        assert verify_cover(S, decode_cover(f, res.model))


values = st.lists(st.lists(st.sampled_from([0, 0, 1, 2, 3]), min_size=3, max_size=3), min_size=2, max_size=4)


@given(values, st.integers(1, 4))
@settings(max_examples=80, deadline=None)
def test_refined_symmetry_breaking_is_sound(rows, r):
    S = SlackMatrix.from_rows(rows)
    if not S.support_size():
        return
    for enc in (encode_grrc, encode_rrc):
        plain = solve(enc(S, r)).status
        broken = solve(enc(S, r, symmetry=True)).status
        assert plain == broken
        # every refined cover is a cover
        if plain == SAT:
            assert solve(encode_rc(S, r)).status == SAT


def test_grrc_equal_cross_products_add_nothing():
    S = SlackMatrix.from_rows([[1, 2], [2, 4]])
    assert encode_grrc(S, 2).clauses == encode_rc(S, 2).clauses
    assert encode_rrc(S, 2).clauses == encode_rc(S, 2).clauses


def test_all_ones_2x2():
    S = SlackMatrix.from_rows([[1, 1], [1, 1]])
    assert solve(encode_rrc(S, 1)).status == SAT
    assert solve(encode_grrc(S, 1)).status == SAT


def test_unequal_block_needs_two_rectangles():
    S = SlackMatrix.from_rows([[1, 1], [1, Fraction(2)]])
    assert solve(encode_grrc(S, 1)).status == UNSAT
    assert solve(encode_grrc(S, 2)).status == SAT
    assert solve(encode_rrc(S, 1)).status == UNSAT


def test_standard_delta52_has_generic_refined_nine_cover():
    # the standard slack matrix is 0/1, so every positive 2x2 block has equal cross products
    S = slack_matrix_standard((5, 2))
    assert solve(encode_grrc(S, 9, symmetry=True)).status == SAT


def test_special52_refined_variants():
    S = special52()
    assert solve(encode_grrc(S, 9, symmetry=True)).status == UNSAT
    assert solve(encode_rrc(S, 9, symmetry=True)).status == UNSAT
    # plain rectangle covering does not see the values
    assert solve(encode_rc(S, 9, symmetry=True)).status == SAT
    assert solve(encode_grrc(S, 10, symmetry=True)).status == SAT


def test_external_solver_agrees():
    pytest.importorskip("pysat")
    from hyperx.sat import solve_external

    f = encode_rc(slack_matrix_standard((5, 2)), 8, symmetry=True)
    assert solve_external(f).status == UNSAT
    g = encode_rc(slack_matrix_standard((5, 2)), 9)
    res = solve_external(g)
    assert res.status == SAT and verify_cover(g.matrix, decode_cover(g, res.model))
