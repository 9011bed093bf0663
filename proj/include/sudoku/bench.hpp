#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sudoku/strategy.hpp"

namespace sudoku {

struct DatasetEntry {
  Grid puzzle;
  int line_number = 0;                // 1-based line in the source file
  std::optional<Grid> reference;      // known solution, when available
};

// One puzzle per line, '0' or '.' blanks; blank lines and '#' comments are
// skipped. Throws FileNotFound or MalformedLine (with the offending line).
// Entries with fewer than 17 clues only produce a warning on stderr.
std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path);

// Uniform sample without replacement of k indices out of 0..population-1,
// returned in ascending order. Deterministic for a given seed across
// platforms. Throws std::invalid_argument if k > population.
std::vector<int> sample_indices(int population, int k, std::uint64_t seed);

struct PuzzleResult {
  int line_number = 0;
  Stage stage = Stage::Failed;
  Difficulty difficulty = Difficulty::Devil;
  int attempts = 0;
  double millis = 0.0;

  bool operator==(const PuzzleResult&) const = default;
};

// Flat descriptor of a batch run, echoed into every report.
struct BatchConfig {
  Formulation formulation = Formulation::LP2;
  bool reweighted = false;
  bool bounded = false;
  double epsilon = 0.5;
  bool strategy = true;
  std::optional<int> sample_size;
  std::uint64_t seed = 0;
  int workers = 1;

  bool operator==(const BatchConfig&) const = default;
};

struct BatchReport {
  BatchConfig config;
  int total = 0;
  int first_solving = 0;
  int step1 = 0;
  int step2 = 0;
  int step3 = 0;
  int solved_total = 0;
  double elapsed_seconds = 0.0;
  std::vector<PuzzleResult> per_puzzle;  // in dataset order

  bool operator==(const BatchReport&) const = default;
};

// Runs the pipeline over a seeded uniform sample (or everything when
// sample_size is empty). Every reported success was verified against the
// backtracking oracle during the run. Per-entry failures are recorded and
// never abort the batch.
BatchReport run_batch(const std::vector<DatasetEntry>& entries, const ModelConfig& cfg,
                      std::optional<int> sample_size, std::uint64_t seed, int workers,
                      const PipelineOptions& pipeline = {});

enum class ReportFormat { Table, Json, Csv };

void emit_report(const BatchReport& r, ReportFormat format, std::ostream& out);
void emit_report(const BatchReport& r, ReportFormat format, const std::filesystem::path& path);

std::string report_to_json(const BatchReport& r);
BatchReport report_from_json(const std::string& text);

}  // namespace sudoku
