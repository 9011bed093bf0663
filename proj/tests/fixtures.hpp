#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sudoku/grid.hpp"
#include "sudoku/oracle.hpp"

// The 17-clue puzzle and unique solution shown in the reference figure; the
// puzzle is a member of the bundled collection.
inline constexpr const char* kFig1Puzzle =
    "000000001000000020000003000000040500006000300007810000010020004030000070950000000";
inline constexpr const char* kFig1Solution =
    "273964851469158723185273469821346597546792318397815246718529634632481975954637182";

// Seeded RNG with hand-rolled bounded draws so fixtures are identical across
// standard library implementations.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : rng_(seed) {}

  int bounded(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % un;
    std::uint64_t r;
    do {
      r = rng_();
    } while (r >= limit);
    return static_cast<int>(r % un);
  }

  double real01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(this->bounded(i + 1))]);
  }

 private:
  std::mt19937_64 rng_;
};

// A random complete solution grid: the three diagonal boxes are filled with
// independent random permutations and the backtracking solver completes the
// rest deterministically.
inline sudoku::Grid random_solution(TestRng& rng) {
  while (true) {
    sudoku::Grid g;
    for (int box = 0; box < 3; ++box) {
      std::vector<sudoku::Digit> digits = {1, 2, 3, 4, 5, 6, 7, 8, 9};
      rng.shuffle(digits);
      int i = 0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) g.at(3 * box + r, 3 * box + c) = digits[static_cast<std::size_t>(i++)];
    }
    if (auto solved = sudoku::backtrack_solve(g)) return *solved;
  }
}

// Carves cells from a complete grid in random order while the puzzle keeps a
// unique solution, stopping at target_clues givens.
inline sudoku::Grid carve_puzzle(const sudoku::Grid& solution, TestRng& rng, int target_clues) {
  sudoku::Grid puzzle = solution;
  std::vector<int> order(sudoku::kGridCells);
  for (int k = 0; k < sudoku::kGridCells; ++k) order[static_cast<std::size_t>(k)] = k;
  rng.shuffle(order);
  int filled = sudoku::kGridCells;
  for (int k : order) {
    if (filled <= target_clues) break;
    const sudoku::Digit saved = puzzle[k];
    puzzle[k] = 0;
    if (sudoku::count_solutions(puzzle) == sudoku::SolutionCount::One)
      --filled;
    else
      puzzle[k] = saved;
  }
  return puzzle;
}

// Deterministic set of unique-solution fixture puzzles, via the oracle.
inline std::vector<sudoku::Grid> fixture_puzzles(int count, std::uint64_t seed, int target_clues = 28) {
  TestRng rng(seed);
  std::vector<sudoku::Grid> puzzles;
  puzzles.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) puzzles.push_back(carve_puzzle(random_solution(rng), rng, target_clues));
  return puzzles;
}
