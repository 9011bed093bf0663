#include "sudoku/encode.hpp"

namespace sudoku {

ConstraintSystem build_system(const Grid& puzzle) {
  if (validate(puzzle).status == GridStatus::Conflicted)
    throw ConflictedPuzzle("puzzle has duplicate digits in a unit");

  const int clue_count = puzzle.filled_count();
  const int rows = kStructuralRows + clue_count;

  ConstraintSystem sys;
  sys.matrix = DenseMatrix(rows, kVariables);
  sys.rhs.assign(static_cast<std::size_t>(rows), 1.0);
  sys.clue_count = clue_count;
  sys.blocks.clue = {kStructuralRows, rows};

  // A_row: for grid-row r and digit d, one per column of that row.
  for (int r = 0; r < 9; ++r)
    for (int d = 1; d <= 9; ++d)
      for (int c = 0; c < 9; ++c) sys.matrix(9 * r + (d - 1), indicator_index(9 * r + c, d)) = 1.0;

  // A_col: for grid-column c and digit d.
  for (int c = 0; c < 9; ++c)
    for (int d = 1; d <= 9; ++d)
      for (int r = 0; r < 9; ++r)
        sys.matrix(81 + 9 * c + (d - 1), indicator_index(9 * r + c, d)) = 1.0;

  // A_box: for box b and digit d.
  for (int b = 0; b < 9; ++b) {
    const int br = 3 * (b / 3);
    const int bc = 3 * (b % 3);
    for (int d = 1; d <= 9; ++d)
      for (int i = 0; i < 9; ++i) {
        const int k = 9 * (br + i / 3) + (bc + i % 3);
        sys.matrix(162 + 9 * b + (d - 1), indicator_index(k, d)) = 1.0;
      }
  }

  // A_cell: each cell carries exactly one digit.
  for (int k = 0; k < kGridCells; ++k)
    for (int d = 1; d <= 9; ++d) sys.matrix(243 + k, indicator_index(k, d)) = 1.0;

  // A_clue: a single one per given, in cell index order.
  int row = kStructuralRows;
  for (int k = 0; k < kGridCells; ++k)
    if (puzzle[k] != 0) sys.matrix(row++, indicator_index(k, puzzle[k])) = 1.0;

  return sys;
}

IndicatorVector grid_to_indicator(const Grid& g) {
  IndicatorVector x{};
  for (int k = 0; k < kGridCells; ++k) {
    if (g[k] == 0) throw IncompleteGrid("grid has blank cells");
    x[static_cast<std::size_t>(indicator_index(k, g[k]))] = 1.0;
  }
  return x;
}

Grid round_to_grid(const IndicatorVector& x) {
  Grid g;
  for (int k = 0; k < kGridCells; ++k) {
    int best = 1;
    double best_val = x[static_cast<std::size_t>(9 * k)];
    for (int d = 2; d <= 9; ++d) {
      const double v = x[static_cast<std::size_t>(indicator_index(k, d))];
      if (v > best_val) {
        best_val = v;
        best = d;
      }
    }
    g[k] = static_cast<Digit>(best);
  }
  return g;
}

std::string dump_matrix(const ConstraintSystem& sys) {
  std::string out;
  out.reserve(static_cast<std::size_t>(sys.matrix.rows()) * (kVariables + 1));
  for (int i = 0; i < sys.matrix.rows(); ++i) {
    for (int j = 0; j < kVariables; ++j) out += sys.matrix(i, j) != 0.0 ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace sudoku
