#include "sudoku/grid.hpp"

#include <cctype>

namespace sudoku {

namespace {

std::array<Units, kGridCells> make_unit_table() {
  std::array<Units, kGridCells> table{};
  for (int k = 0; k < kGridCells; ++k) {
    const int r = k / 9;
    const int c = k % 9;
    const int br = 3 * (r / 3);
    const int bc = 3 * (c / 3);
    for (int i = 0; i < 9; ++i) {
      table[static_cast<std::size_t>(k)].row[static_cast<std::size_t>(i)] = 9 * r + i;
      table[static_cast<std::size_t>(k)].col[static_cast<std::size_t>(i)] = 9 * i + c;
      table[static_cast<std::size_t>(k)].box[static_cast<std::size_t>(i)] =
          9 * (br + i / 3) + (bc + i % 3);
    }
  }
  return table;
}

std::array<std::array<int, 9>, 27> make_all_units() {
  std::array<std::array<int, 9>, 27> units{};
  for (int r = 0; r < 9; ++r)
    for (int i = 0; i < 9; ++i) units[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = 9 * r + i;
  for (int c = 0; c < 9; ++c)
    for (int i = 0; i < 9; ++i) units[static_cast<std::size_t>(9 + c)][static_cast<std::size_t>(i)] = 9 * i + c;
  for (int b = 0; b < 9; ++b) {
    const int br = 3 * (b / 3);
    const int bc = 3 * (b % 3);
    for (int i = 0; i < 9; ++i)
      units[static_cast<std::size_t>(18 + b)][static_cast<std::size_t>(i)] = 9 * (br + i / 3) + (bc + i % 3);
  }
  return units;
}

}  // namespace

int Grid::filled_count() const {
  int n = 0;
  for (Digit d : cells) n += (d != 0);
  return n;
}

bool Grid::complete() const { return filled_count() == kGridCells; }

ClueSet clues_of(const Grid& puzzle) {
  ClueSet s;
  for (int k = 0; k < kGridCells; ++k)
    if (puzzle[k] != 0) s.set(static_cast<std::size_t>(k));
  return s;
}

const Units& units_of(int cell) {
  static const std::array<Units, kGridCells> table = make_unit_table();
  return table[static_cast<std::size_t>(cell)];
}

const std::array<std::array<int, 9>, 27>& all_units() {
  static const std::array<std::array<int, 9>, 27> units = make_all_units();
  return units;
}

Grid parse_grid(std::string_view text) {
  Grid g;
  int n = 0;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (n == kGridCells) throw MalformedInput("grid text has more than 81 characters");
    if (ch == '0' || ch == '.') {
      g[n] = 0;
    } else if (ch >= '1' && ch <= '9') {
      g[n] = static_cast<Digit>(ch - '0');
    } else {
      throw MalformedInput(std::string("illegal character '") + ch + "' in grid text");
    }
    ++n;
  }
  if (n != kGridCells)
    throw MalformedInput("grid text has " + std::to_string(n) + " characters, expected 81");
  return g;
}

std::string format_grid(const Grid& g) {
  std::string s(kGridCells, '0');
  for (int k = 0; k < kGridCells; ++k)
    s[static_cast<std::size_t>(k)] = static_cast<char>('0' + g[k]);
  return s;
}

std::string format_pretty(const Grid& g) {
  std::string s;
  s.reserve(90);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const Digit d = g.at(r, c);
      s += d == 0 ? '.' : static_cast<char>('0' + d);
    }
    s += '\n';
  }
  return s;
}

ValidationResult validate(const Grid& g) {
  ValidationResult result;
  for (const auto& unit : all_units()) {
    int count[10] = {0};
    for (int k : unit) count[g[k]]++;
    for (int k : unit) {
      const Digit d = g[k];
      if (d != 0 && count[d] >= 2) result.conflicts.set(static_cast<std::size_t>(k));
    }
  }
  if (result.conflicts.any())
    result.status = GridStatus::Conflicted;
  else
    result.status = g.complete() ? GridStatus::Solved : GridStatus::Incomplete;
  return result;
}

}  // namespace sudoku
