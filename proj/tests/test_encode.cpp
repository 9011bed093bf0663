#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "sudoku/encode.hpp"

using namespace sudoku;

TEST_CASE("build_system shapes the matrix as (324 + clues) x 729") {
  const ConstraintSystem fig1 = build_system(parse_grid(kFig1Puzzle));
  CHECK(fig1.matrix.rows() == 341);
  CHECK(fig1.matrix.cols() == 729);
  CHECK(fig1.clue_count == 17);
  CHECK(fig1.rhs.size() == 341);
  CHECK(fig1.blocks.clue == std::pair<int, int>{324, 341});

  const ConstraintSystem empty = build_system(Grid{});
  CHECK(empty.matrix.rows() == 324);
  CHECK(empty.clue_count == 0);
}

TEST_CASE("build_system rejects conflicted puzzles") {
  Grid g;
  g[0] = 4;
  g[1] = 4;
  CHECK_THROWS_AS(build_system(g), ConflictedPuzzle);
}

TEST_CASE("the first row-constraint row covers digit 1 of grid row 0") {
  const ConstraintSystem sys = build_system(Grid{});
  for (int j = 0; j < kVariables; ++j) {
    const bool expected = (j % 9 == 0) && (j < 81);
    CHECK(sys.matrix(0, j) == (expected ? 1.0 : 0.0));
  }
}

TEST_CASE("structural rows have 9 ones, clue rows 1, rhs all ones") {
  const ConstraintSystem sys = build_system(parse_grid(kFig1Puzzle));
  for (int i = 0; i < sys.matrix.rows(); ++i) {
    int ones = 0;
    for (int j = 0; j < kVariables; ++j) {
      const double v = sys.matrix(i, j);
      CHECK((v == 0.0 || v == 1.0));
      ones += v != 0.0;
    }
    CHECK(ones == (i < kStructuralRows ? 9 : 1));
    CHECK(sys.rhs[static_cast<std::size_t>(i)] == 1.0);
  }
}

TEST_CASE("every column hits one row, col, box and cell constraint") {
  const ConstraintSystem sys = build_system(Grid{});
  for (int j = 0; j < kVariables; ++j) {
    double sum = 0.0;
    for (int i = 0; i < kStructuralRows; ++i) sum += sys.matrix(i, j);
    CHECK(sum == 4.0);
  }
}

TEST_CASE("grid_to_indicator one-hot encodes each cell") {
  Grid all_ones;
  for (int k = 0; k < kGridCells; ++k) all_ones[k] = 1;
  const IndicatorVector x = grid_to_indicator(all_ones);
  for (int j = 0; j < kVariables; ++j) CHECK(x[j] == (j % 9 == 0 ? 1.0 : 0.0));

  Grid g = all_ones;
  g[13] = 4;
  const IndicatorVector y = grid_to_indicator(g);
  for (int d = 1; d <= 9; ++d) CHECK(y[indicator_index(13, d)] == (d == 4 ? 1.0 : 0.0));

  CHECK_THROWS_AS(grid_to_indicator(Grid{}), IncompleteGrid);
}

TEST_CASE("the figure-1 solution satisfies its system exactly") {
  const ConstraintSystem sys = build_system(parse_grid(kFig1Puzzle));
  const IndicatorVector x = grid_to_indicator(parse_grid(kFig1Solution));
  const std::vector<double> prod = sys.matrix.multiply(x);
  for (double v : prod) CHECK(v == 1.0);
}

TEST_CASE("round_to_grid takes the per-cell argmax") {
  IndicatorVector x{};
  const double e[9] = {0.1, 0.11, 0.3, 0.4, 0.22, 0.211, 0.113, 0.122, 0.33};
  for (int d = 0; d < 9; ++d) x[d] = e[d];
  CHECK(round_to_grid(x)[0] == 4);

  // All-zero sub-vectors fall back to the smallest digit.
  CHECK(round_to_grid(IndicatorVector{})[40] == 1);

  IndicatorVector tie{};
  tie[indicator_index(2, 3)] = 0.5;
  tie[indicator_index(2, 7)] = 0.5;
  CHECK(round_to_grid(tie)[2] == 3);
}

TEST_CASE("round_to_grid inverts grid_to_indicator") {
  TestRng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Grid g;
    for (int k = 0; k < kGridCells; ++k) g[k] = static_cast<Digit>(1 + rng.bounded(9));
    CHECK(round_to_grid(grid_to_indicator(g)) == g);
  }
}

TEST_CASE("dump_matrix emits one 0/1 line per row") {
  const ConstraintSystem sys = build_system(parse_grid(kFig1Puzzle));
  const std::string text = dump_matrix(sys);
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.size() == 729);
    ++rows;
  }
  CHECK(rows == 341);
  CHECK(text.substr(0, 19) == "1000000001000000001");
}
