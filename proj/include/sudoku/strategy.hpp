#pragma once

#include <chrono>
#include <optional>

#include "sudoku/models.hpp"

namespace sudoku {

enum class Stage { First, Step1, Step2, Step3, Failed };
enum class Difficulty { Easy, Middle, Hard, Devil };

const char* to_string(Stage s);
const char* to_string(Difficulty d);
Stage stage_from_string(const std::string& s);
Difficulty difficulty_of(Stage s);

struct SolveOutcome {
  bool success = false;
  Grid final_grid;  // a valid solution iff success
  Stage stage = Stage::Failed;
  Difficulty difficulty = Difficulty::Devil;
  int step3_attempts = 0;
  std::chrono::duration<double> elapsed{0};
};

enum class Step3Order { RowMajor, ReverseRowMajor };
enum class Step3Pool { LastPrune, UnionOfFailures };

struct PipelineOptions {
  bool enable_strategy = true;           // false stops after the first solve
  Step3Order step3_order = Step3Order::RowMajor;
  Step3Pool step3_pool = Step3Pool::LastPrune;
  bool step3_nested_prune = false;       // re-prune and re-solve inside each candidate
};

// build_system -> l1 / reweighted-l1 solve -> per-cell rounding. Always
// returns a complete (possibly rule-invalid) grid. Throws ConflictedPuzzle
// or LpFailed.
Grid base_solve(const Grid& puzzle, const ModelConfig& cfg);

// Blanks every conflicted non-clue cell; clue cells are never touched.
Grid prune_conflicts(const Grid& solved, const ClueSet& clues);

// The restart pipeline: first solve, two prune-and-resolve passes, then the
// successive-increase step that re-solves with one pruned-solution cell added
// to the original clues (at most 81 candidates). `reference`, when given, is
// the known unique solution and is used only as a cross-check after success.
SolveOutcome solve_pipeline(const Grid& puzzle, const ModelConfig& cfg,
                            const std::optional<Grid>& reference = std::nullopt,
                            const PipelineOptions& opts = {});

}  // namespace sudoku
