#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>

#include "sudoku/errors.hpp"

namespace sudoku {

// A cell value: 1..9, or 0 for blank.
using Digit = std::uint8_t;

constexpr int kGridCells = 81;

// 9x9 grid in row-major order, cell k = 9*row + col. Puzzles, partial
// solutions and complete solutions all use this type.
struct Grid {
  std::array<Digit, kGridCells> cells{};

  Digit operator[](int k) const { return cells[static_cast<std::size_t>(k)]; }
  Digit& operator[](int k) { return cells[static_cast<std::size_t>(k)]; }
  Digit at(int row, int col) const { return cells[static_cast<std::size_t>(9 * row + col)]; }
  Digit& at(int row, int col) { return cells[static_cast<std::size_t>(9 * row + col)]; }

  int filled_count() const;
  bool complete() const;

  bool operator==(const Grid&) const = default;
};

// Set of cell indices, used for clue positions and conflict sets.
using CellSet = std::bitset<kGridCells>;
using ClueSet = CellSet;

// Positions filled in the original puzzle.
ClueSet clues_of(const Grid& puzzle);

enum class GridStatus { Solved, Incomplete, Conflicted };

struct ValidationResult {
  GridStatus status = GridStatus::Incomplete;
  CellSet conflicts;
};

// The row, column and box units containing one cell (9 cell indices each).
struct Units {
  std::array<int, 9> row;
  std::array<int, 9> col;
  std::array<int, 9> box;
};

const Units& units_of(int cell);

// All 27 units: rows 0..8, then columns, then boxes.
const std::array<std::array<int, 9>, 27>& all_units();

// Accepts exactly 81 significant characters ('1'-'9', '0' or '.' for blank)
// after stripping whitespace. Throws MalformedInput otherwise.
Grid parse_grid(std::string_view text);

// Single-line 81-character form, blanks as '0'. Inverse of parse_grid.
std::string format_grid(const Grid& g);

// 9-line rendering with '.' blanks, for logs only.
std::string format_pretty(const Grid& g);

// Solved iff complete and every unit holds each digit exactly once.
// A cell conflicts when its (non-blank) digit appears at least twice in one
// of its three units; all members of the duplicate group are flagged.
// Blanks never conflict.
ValidationResult validate(const Grid& g);

}  // namespace sudoku
