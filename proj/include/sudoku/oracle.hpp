#pragma once

#include <optional>

#include "sudoku/grid.hpp"

namespace sudoku {

enum class SolutionCount { Zero, One, Many };

// Exact recursive-backtracking solver used as ground truth. Deterministic:
// cells are tried in minimum-remaining-values order, digits ascending.
std::optional<Grid> backtrack_solve(const Grid& puzzle);

// Counts completions, stopping as soon as `cap` are found (Many means >= 2).
SolutionCount count_solutions(const Grid& puzzle, int cap = 2);

}  // namespace sudoku
