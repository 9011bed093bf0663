#include <doctest.h>

#include "fixtures.hpp"
#include "sudoku/oracle.hpp"
#include "sudoku/strategy.hpp"

using namespace sudoku;

namespace {

ModelConfig lp2_config() {
  ModelConfig cfg;
  cfg.formulation = Formulation::LP2;
  return cfg;
}

}  // namespace

TEST_CASE("difficulty follows the stage") {
  CHECK(difficulty_of(Stage::First) == Difficulty::Easy);
  CHECK(difficulty_of(Stage::Step1) == Difficulty::Middle);
  CHECK(difficulty_of(Stage::Step2) == Difficulty::Middle);
  CHECK(difficulty_of(Stage::Step3) == Difficulty::Hard);
  CHECK(difficulty_of(Stage::Failed) == Difficulty::Devil);
}

TEST_CASE("prune_conflicts is the identity on valid grids") {
  const Grid solution = parse_grid(kFig1Solution);
  CHECK(prune_conflicts(solution, clues_of(parse_grid(kFig1Puzzle))) == solution);
}

TEST_CASE("prune_conflicts blanks both copies of a duplicate") {
  Grid g = parse_grid(kFig1Solution);
  g.at(0, 0) = g.at(0, 5);  // duplicate inside row 0, both non-clue cells
  const ClueSet clues = clues_of(parse_grid(kFig1Puzzle));
  const Grid pruned = prune_conflicts(g, clues);
  CHECK(pruned.at(0, 0) == 0);
  CHECK(pruned.at(0, 5) == 0);
  CHECK(validate(pruned).status != GridStatus::Conflicted);
}

TEST_CASE("prune_conflicts never blanks a clue") {
  const Grid puzzle = parse_grid(kFig1Puzzle);
  Grid g = parse_grid(kFig1Solution);
  // Cell (8,0) holds the clue 9; plant another 9 in the same column.
  g.at(4, 0) = 9;
  const Grid pruned = prune_conflicts(g, clues_of(puzzle));
  CHECK(pruned.at(8, 0) == 9);
  CHECK(pruned.at(4, 0) == 0);
  for (int k = 0; k < kGridCells; ++k)
    if (puzzle[k] != 0) CHECK(pruned[k] == puzzle[k]);
}

TEST_CASE("pruning a conflicted base solve leaves no conflicts") {
  TestRng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    Grid g;
    for (int k = 0; k < kGridCells; ++k) g[k] = static_cast<Digit>(1 + rng.bounded(9));
    const Grid pruned = prune_conflicts(g, ClueSet{});
    CHECK(validate(pruned).status != GridStatus::Conflicted);
  }
}

TEST_CASE("base_solve returns a complete grid and respects full clue sets") {
  const Grid solution = parse_grid(kFig1Solution);
  // An already-complete valid grid: every cell is a clue, so the lp is forced.
  CHECK(base_solve(solution, lp2_config()) == solution);

  const Grid g = base_solve(parse_grid(kFig1Puzzle), lp2_config());
  CHECK(g.complete());
}

TEST_CASE("base_solve rejects conflicted puzzles") {
  Grid g;
  g[3] = 2;
  g[4] = 2;
  CHECK_THROWS_AS(base_solve(g, lp2_config()), ConflictedPuzzle);
}

TEST_CASE("the pipeline solves figure 1 and cross-checks the reference") {
  const Grid puzzle = parse_grid(kFig1Puzzle);
  const Grid solution = parse_grid(kFig1Solution);
  const SolveOutcome outcome = solve_pipeline(puzzle, lp2_config(), solution);
  CHECK(outcome.success);
  CHECK(outcome.final_grid == solution);
  CHECK(outcome.stage != Stage::Failed);
  CHECK(outcome.difficulty == difficulty_of(outcome.stage));
  CHECK(validate(outcome.final_grid).status == GridStatus::Solved);
}

TEST_CASE("a wrong reference trips the uniqueness cross-check") {
  const Grid puzzle = parse_grid(kFig1Puzzle);
  Grid wrong = parse_grid(kFig1Solution);
  std::swap(wrong.cells[0], wrong.cells[1]);
  CHECK_THROWS_AS(solve_pipeline(puzzle, lp2_config(), wrong), Error);
}

TEST_CASE("disabling the strategy stops after the first solve") {
  PipelineOptions first_only;
  first_only.enable_strategy = false;
  const SolveOutcome outcome =
      solve_pipeline(parse_grid(kFig1Puzzle), lp2_config(), std::nullopt, first_only);
  CHECK((outcome.stage == Stage::First || outcome.stage == Stage::Failed));
  CHECK(outcome.step3_attempts == 0);
}

TEST_CASE("pipeline outcomes stay consistent on fixture puzzles") {
  const auto puzzles = fixture_puzzles(8, 404, 30);
  for (const Grid& puzzle : puzzles) {
    const auto reference = backtrack_solve(puzzle);
    REQUIRE(reference.has_value());
    const SolveOutcome outcome = solve_pipeline(puzzle, lp2_config(), reference);
    CHECK(outcome.step3_attempts <= 81);
    CHECK(outcome.success == (outcome.stage != Stage::Failed));
    if (outcome.success) {
      CHECK(outcome.final_grid == *reference);
      for (int k = 0; k < kGridCells; ++k)
        if (puzzle[k] != 0) CHECK(outcome.final_grid[k] == puzzle[k]);
    }
  }
}

TEST_CASE("enabling later steps never loses a first-solve success") {
  const auto puzzles = fixture_puzzles(4, 505, 30);
  for (const Grid& puzzle : puzzles) {
    PipelineOptions first_only;
    first_only.enable_strategy = false;
    const SolveOutcome quick = solve_pipeline(puzzle, lp2_config(), std::nullopt, first_only);
    const SolveOutcome full = solve_pipeline(puzzle, lp2_config());
    if (quick.success) {
      CHECK(full.stage == Stage::First);
      CHECK(full.final_grid == quick.final_grid);
    }
  }
}
