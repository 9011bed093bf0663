#include "sudoku/strategy.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace sudoku {

const char* to_string(Stage s) {
  switch (s) {
    case Stage::First: return "first";
    case Stage::Step1: return "step1";
    case Stage::Step2: return "step2";
    case Stage::Step3: return "step3";
    case Stage::Failed: return "failed";
  }
  return "unknown";
}

const char* to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Middle: return "middle";
    case Difficulty::Hard: return "hard";
    case Difficulty::Devil: return "devil";
  }
  return "unknown";
}

Stage stage_from_string(const std::string& s) {
  if (s == "first") return Stage::First;
  if (s == "step1") return Stage::Step1;
  if (s == "step2") return Stage::Step2;
  if (s == "step3") return Stage::Step3;
  if (s == "failed") return Stage::Failed;
  throw Error("unknown stage name: " + s);
}

Difficulty difficulty_of(Stage s) {
  switch (s) {
    case Stage::First: return Difficulty::Easy;
    case Stage::Step1:
    case Stage::Step2: return Difficulty::Middle;
    case Stage::Step3: return Difficulty::Hard;
    case Stage::Failed: return Difficulty::Devil;
  }
  return Difficulty::Devil;
}

Grid base_solve(const Grid& puzzle, const ModelConfig& cfg) {
  const ConstraintSystem sys = build_system(puzzle);
  const IndicatorVector x = cfg.reweighted ? solve_wp1(sys, cfg) : solve_p1(sys, cfg);
  return round_to_grid(x);
}

Grid prune_conflicts(const Grid& solved, const ClueSet& clues) {
  const ValidationResult vr = validate(solved);
  Grid out = solved;
  for (int k = 0; k < kGridCells; ++k)
    if (vr.conflicts[static_cast<std::size_t>(k)] && !clues[static_cast<std::size_t>(k)]) out[k] = 0;
  return out;
}

namespace {

bool extends_clues(const Grid& g, const Grid& puzzle) {
  for (int k = 0; k < kGridCells; ++k)
    if (puzzle[k] != 0 && g[k] != puzzle[k]) return false;
  return true;
}

bool solved_extension(const Grid& g, const Grid& puzzle) {
  return validate(g).status == GridStatus::Solved && extends_clues(g, puzzle);
}

// (cell, digit) pairs of a pruned grid minus the original clues, in row-major
// cell order.
void collect_candidates(const Grid& pruned, const ClueSet& clues,
                        std::vector<std::pair<int, Digit>>& out) {
  for (int k = 0; k < kGridCells; ++k)
    if (pruned[k] != 0 && !clues[static_cast<std::size_t>(k)]) out.emplace_back(k, pruned[k]);
}

}  // namespace

SolveOutcome solve_pipeline(const Grid& puzzle, const ModelConfig& cfg,
                            const std::optional<Grid>& reference, const PipelineOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const ClueSet clues = clues_of(puzzle);

  SolveOutcome out;
  out.stage = Stage::Failed;

  const Grid g0 = base_solve(puzzle, cfg);
  if (solved_extension(g0, puzzle)) {
    out.stage = Stage::First;
    out.final_grid = g0;
  } else if (opts.enable_strategy) {
    // Steps 1 and 2: delete duplicates, keep the rest as a new puzzle, solve
    // again; then once more on the latest failed solution. Exactly one
    // repetition, further passes bring no improvement. A pruned puzzle can
    // keep a wrong digit that leaves some other cell with no candidate at
    // all; the resulting infeasible solve counts as a failure of that step,
    // not of the pipeline.
    std::vector<Grid> failures{g0};
    Grid pruned = prune_conflicts(g0, clues);
    for (Stage stage : {Stage::Step1, Stage::Step2}) {
      std::optional<Grid> g;
      try {
        g = base_solve(pruned, cfg);
      } catch (const LpFailed&) {
        break;  // nothing new to prune, move on to step 3
      }
      if (solved_extension(*g, puzzle)) {
        out.stage = stage;
        out.final_grid = *g;
        break;
      }
      failures.push_back(*g);
      pruned = prune_conflicts(*g, clues);
    }

    if (out.stage == Stage::Failed) {
      // Step 3: add one surviving non-clue cell to the original puzzle and
      // re-solve, over at most 81 candidates from the latest pruned grid.
      std::vector<std::pair<int, Digit>> candidates;
      collect_candidates(pruned, clues, candidates);
      if (opts.step3_pool == Step3Pool::UnionOfFailures) {
        for (const Grid& failure : failures) collect_candidates(prune_conflicts(failure, clues), clues, candidates);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      }
      if (opts.step3_order == Step3Order::ReverseRowMajor)
        std::reverse(candidates.begin(), candidates.end());
      if (candidates.size() > static_cast<std::size_t>(kGridCells)) candidates.resize(kGridCells);

      for (const auto& [cell, digit] : candidates) {
        Grid augmented = puzzle;
        augmented[cell] = digit;
        if (validate(augmented).status == GridStatus::Conflicted) continue;
        ++out.step3_attempts;
        try {
          Grid g = base_solve(augmented, cfg);
          if (!solved_extension(g, puzzle) && opts.step3_nested_prune) {
            const ClueSet aug_clues = clues_of(augmented);
            for (int repeat = 0; repeat < 2 && !solved_extension(g, puzzle); ++repeat)
              g = base_solve(prune_conflicts(g, aug_clues), cfg);
          }
          if (solved_extension(g, puzzle)) {
            out.stage = Stage::Step3;
            out.final_grid = g;
            break;
          }
        } catch (const LpFailed&) {
          // An infeasible augmented system just disqualifies this candidate.
        }
      }
    }
  }

  out.success = out.stage != Stage::Failed;
  out.difficulty = difficulty_of(out.stage);
  out.elapsed = std::chrono::steady_clock::now() - start;
  if (out.success && reference.has_value() && !(out.final_grid == *reference))
    throw Error("solved grid differs from the reference solution");
  return out;
}

}  // namespace sudoku
