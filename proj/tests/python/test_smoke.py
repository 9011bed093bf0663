import numpy as np
import pytest

import sudoku_lp

FIG1_PUZZLE = (
    "000000001000000020000003000000040500006000300"
    "007810000010020004030000070950000000"
)
FIG1_SOLUTION = (
    "273964851469158723185273469821346597546792318"
    "397815246718529634632481975954637182"
)


def test_parse_and_pretty():
    assert sudoku_lp.parse_grid(FIG1_PUZZLE.replace("0", ".")) == FIG1_PUZZLE
    pretty = sudoku_lp.pretty(FIG1_PUZZLE)
    assert pretty.count("\n") == 9
    assert pretty.splitlines()[0] == "........1"
    with pytest.raises(Exception):
        sudoku_lp.parse_grid("123")


def test_validate():
    assert sudoku_lp.validate(FIG1_SOLUTION)["status"] == "solved"
    assert sudoku_lp.validate(FIG1_PUZZLE)["status"] == "incomplete"
    conflicted = "55" + "0" * 79
    res = sudoku_lp.validate(conflicted)
    assert res["status"] == "conflicted"
    assert res["conflicts"] == [0, 1]


def test_build_system_shape():
    sys = sudoku_lp.build_system(FIG1_PUZZLE)
    assert sys["matrix"].shape == (341, 729)
    assert sys["clue_count"] == 17
    assert np.all(sys["rhs"] == 1.0)
    # every variable hits one row, column, box and cell constraint
    col_sums = sys["matrix"][:324].sum(axis=0)
    assert np.all(col_sums == 4.0)
    x = sudoku_lp.grid_to_indicator(FIG1_SOLUTION)
    assert np.array_equal(sys["matrix"] @ x, np.ones(341))


def test_round_trip_decoding():
    x = sudoku_lp.grid_to_indicator(FIG1_SOLUTION)
    assert sudoku_lp.round_to_grid(x) == FIG1_SOLUTION


def test_solve_pipeline():
    out = sudoku_lp.solve(FIG1_PUZZLE)
    assert out["success"]
    assert out["solution"] == FIG1_SOLUTION
    assert out["difficulty"] in ("easy", "middle", "hard")


def test_reweighted_solve():
    x = sudoku_lp.solve_indicator(FIG1_PUZZLE, model="wp1", method="lp1", epsilon=0.5)
    assert sudoku_lp.round_to_grid(x) == FIG1_SOLUTION
    assert abs(np.abs(x).sum() - 81.0) < 1e-6


def test_oracle():
    assert sudoku_lp.backtrack_solve(FIG1_PUZZLE) == FIG1_SOLUTION
    assert sudoku_lp.count_solutions(FIG1_PUZZLE) == 1
    assert sudoku_lp.count_solutions("0" * 81) == 2
    doubled = "33" + "0" * 79
    assert sudoku_lp.backtrack_solve(doubled) is None
    assert sudoku_lp.count_solutions(doubled) == 0


def test_generic_lp():
    res = sudoku_lp.solve_lp(
        costs=np.array([1.0, 0.0]),
        eq_matrix=np.array([[1.0, 1.0]]),
        rhs=np.array([1.0]),
        lower=np.zeros(2),
        upper=np.array([np.inf, np.inf]),
    )
    assert res["status"] == "optimal"
    assert res["objective"] == pytest.approx(0.0, abs=1e-9)
    assert res["x"][1] == pytest.approx(1.0)
