#include "sudoku/oracle.hpp"

#include <bit>
#include <cstdint>

namespace sudoku {

namespace {

// Candidate digits per cell tracked as 9-bit masks over rows/cols/boxes.
struct Search {
  Grid grid;
  std::uint16_t row_used[9] = {0};
  std::uint16_t col_used[9] = {0};
  std::uint16_t box_used[9] = {0};
  int found = 0;
  int cap = 1;
  Grid first;

  static int box_of(int k) { return 3 * (k / 27) + (k % 9) / 3; }

  bool init(const Grid& puzzle) {
    grid = puzzle;
    for (int k = 0; k < kGridCells; ++k) {
      const Digit d = puzzle[k];
      if (d == 0) continue;
      const std::uint16_t bit = static_cast<std::uint16_t>(1u << (d - 1));
      const int r = k / 9, c = k % 9, b = box_of(k);
      if ((row_used[r] | col_used[c] | box_used[b]) & bit) return false;  // clue clash
      row_used[r] |= bit;
      col_used[c] |= bit;
      box_used[b] |= bit;
    }
    return true;
  }

  std::uint16_t candidates(int k) const {
    const int r = k / 9, c = k % 9, b = box_of(k);
    return static_cast<std::uint16_t>(~(row_used[r] | col_used[c] | box_used[b]) & 0x1FFu);
  }

  void run() {
    // Minimum-remaining-values cell selection.
    int best = -1;
    int best_n = 10;
    for (int k = 0; k < kGridCells; ++k) {
      if (grid[k] != 0) continue;
      const int n = std::popcount(candidates(k));
      if (n < best_n) {
        best_n = n;
        best = k;
        if (n <= 1) break;
      }
    }
    if (best == -1) {
      if (found == 0) first = grid;
      ++found;
      return;
    }
    if (best_n == 0) return;

    const int r = best / 9, c = best % 9, b = box_of(best);
    std::uint16_t cands = candidates(best);
    while (cands) {
      const int bit_index = std::countr_zero(cands);
      const std::uint16_t bit = static_cast<std::uint16_t>(1u << bit_index);
      cands = static_cast<std::uint16_t>(cands & (cands - 1));
      grid[best] = static_cast<Digit>(bit_index + 1);
      row_used[r] |= bit;
      col_used[c] |= bit;
      box_used[b] |= bit;
      run();
      row_used[r] = static_cast<std::uint16_t>(row_used[r] & ~bit);
      col_used[c] = static_cast<std::uint16_t>(col_used[c] & ~bit);
      box_used[b] = static_cast<std::uint16_t>(box_used[b] & ~bit);
      grid[best] = 0;
      if (found >= cap) return;
    }
  }
};

}  // namespace

std::optional<Grid> backtrack_solve(const Grid& puzzle) {
  Search s;
  s.cap = 1;
  if (!s.init(puzzle)) return std::nullopt;
  s.run();
  if (s.found == 0) return std::nullopt;
  return s.first;
}

SolutionCount count_solutions(const Grid& puzzle, int cap) {
  Search s;
  s.cap = cap < 2 ? cap : 2;
  if (s.cap < 1) s.cap = 1;
  if (!s.init(puzzle)) return SolutionCount::Zero;
  s.run();
  if (s.found == 0) return SolutionCount::Zero;
  return s.found == 1 ? SolutionCount::One : SolutionCount::Many;
}

}  // namespace sudoku
