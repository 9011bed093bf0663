#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "sudoku/dense.hpp"
#include "sudoku/grid.hpp"

namespace sudoku {

constexpr int kVariables = 729;       // 81 cells x 9 digits
constexpr int kStructuralRows = 324;  // row + col + box + cell constraints

// Variable index of (cell, digit): 81 stacked 9-entry cell sub-vectors.
constexpr int indicator_index(int cell, int digit) { return 9 * cell + digit - 1; }

// Real-valued stacked one-hot encoding of a grid.
using IndicatorVector = std::array<double, kVariables>;

// Half-open [begin, end) row ranges of the five constraint groups.
struct RowBlocks {
  std::pair<int, int> row{0, 81};
  std::pair<int, int> col{81, 162};
  std::pair<int, int> box{162, 243};
  std::pair<int, int> cell{243, 324};
  std::pair<int, int> clue{324, 324};
};

// The binary equality system A x = 1 of a puzzle. Rows are stacked in
// row/col/box/cell/clue block order; clue rows follow cell index order.
struct ConstraintSystem {
  DenseMatrix matrix;       // (324 + clue_count) x 729, entries 0/1
  std::vector<double> rhs;  // all ones
  int clue_count = 0;
  RowBlocks blocks;
};

// Throws ConflictedPuzzle if the puzzle already violates a unit.
ConstraintSystem build_system(const Grid& puzzle);

// Throws IncompleteGrid on blank cells.
IndicatorVector grid_to_indicator(const Grid& g);

// Per-cell argmax over the 9-entry sub-vector; ties go to the smallest
// digit. Always yields a complete grid.
Grid round_to_grid(const IndicatorVector& x);

// 0/1 text dump, one line per constraint row, for golden tests.
std::string dump_matrix(const ConstraintSystem& sys);

}  // namespace sudoku
