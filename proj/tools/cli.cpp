#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sudoku/bench.hpp"

namespace {

constexpr const char* kDatasetEnvVar = "SUDOKU_LP_DATASET";

struct ModelFlags {
  std::string model = "p1";
  std::string method = "lp2";
  bool bounded = false;
  double epsilon = 0.5;
  std::string strategy = "full";
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.model, "Sparse model: p1 (l1) or wp1 (reweighted l1)")
      ->check(CLI::IsMember({"p1", "wp1"}));
  cmd->add_option("--method", f.method, "Linear program form: lp1 (split variables) or lp2")
      ->check(CLI::IsMember({"lp1", "lp2"}));
  cmd->add_flag("--bounded", f.bounded, "Use 0 <= x <= 1 instead of x >= 0");
  cmd->add_option("--epsilon", f.epsilon, "Reweighting offset (wp1 only)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--strategy", f.strategy, "Restart strategy: none or full")
      ->check(CLI::IsMember({"none", "full"}));
}

sudoku::ModelConfig to_config(const ModelFlags& f) {
  sudoku::ModelConfig cfg;
  cfg.formulation = f.method == "lp1" ? sudoku::Formulation::LP1 : sudoku::Formulation::LP2;
  cfg.reweighted = f.model == "wp1";
  cfg.bounded = f.bounded;
  cfg.epsilon = f.epsilon;
  return cfg;
}

sudoku::Grid read_puzzle_argument(const std::string& arg) {
  if (std::filesystem::exists(arg) && std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    if (!in) throw sudoku::IoError("cannot open puzzle file: " + arg);
    std::string line;
    while (std::getline(in, line)) {
      const auto begin = line.find_first_not_of(" \t\r\n");
      if (begin == std::string::npos || line[begin] == '#') continue;
      return sudoku::parse_grid(line);
    }
    throw sudoku::MalformedInput("no puzzle line found in " + arg);
  }
  return sudoku::parse_grid(arg);
}

int run_solve(const std::string& puzzle_arg, const ModelFlags& flags) {
  const sudoku::Grid puzzle = read_puzzle_argument(puzzle_arg);
  sudoku::PipelineOptions pipeline;
  pipeline.enable_strategy = flags.strategy == "full";
  const sudoku::SolveOutcome outcome =
      sudoku::solve_pipeline(puzzle, to_config(flags), std::nullopt, pipeline);

  std::cout << "puzzle:\n" << sudoku::format_pretty(puzzle);
  if (outcome.success) {
    std::cout << "solution:\n"
              << sudoku::format_pretty(outcome.final_grid) << sudoku::format_grid(outcome.final_grid)
              << "\n";
  } else {
    std::cout << "no solution found by the configured strategy\n";
  }
  std::cout << "stage: " << sudoku::to_string(outcome.stage)
            << "\ndifficulty: " << sudoku::to_string(outcome.difficulty)
            << "\nstep3_attempts: " << outcome.step3_attempts << "\ntime_ms: "
            << std::chrono::duration<double, std::milli>(outcome.elapsed).count() << "\n";
  return 0;
}

int run_bench(const std::string& dataset_arg, const ModelFlags& flags, std::optional<int> sample,
              std::uint64_t seed, int workers, const std::string& format,
              const std::string& out_path) {
  std::string dataset = dataset_arg;
  if (dataset.empty()) {
    if (const char* env = std::getenv(kDatasetEnvVar)) dataset = env;
  }
  if (dataset.empty()) {
    std::cerr << "error: no dataset given and " << kDatasetEnvVar << " is not set\n";
    return 2;
  }

  const auto entries = sudoku::load_dataset(dataset);
  sudoku::PipelineOptions pipeline;
  pipeline.enable_strategy = flags.strategy == "full";
  const sudoku::BatchReport report =
      sudoku::run_batch(entries, to_config(flags), sample, seed, workers, pipeline);

  sudoku::ReportFormat fmt = sudoku::ReportFormat::Table;
  if (format == "json") fmt = sudoku::ReportFormat::Json;
  if (format == "csv") fmt = sudoku::ReportFormat::Csv;
  if (out_path.empty())
    sudoku::emit_report(report, fmt, std::cout);
  else
    sudoku::emit_report(report, fmt, std::filesystem::path(out_path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sudoku solving via l1 / reweighted-l1 linear programming"};
  app.require_subcommand(1);

  std::string puzzle_arg;
  ModelFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a single puzzle");
  solve_cmd->add_option("puzzle", puzzle_arg, "81-character puzzle or a file containing one")
      ->required();
  add_model_flags(solve_cmd, solve_flags);

  std::string dataset_arg;
  ModelFlags bench_flags;
  int sample = -1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string report_format = "table";
  std::string out_path;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a dataset benchmark");
  bench_cmd->add_option("dataset", dataset_arg,
                        std::string("puzzle list file (default: $") + kDatasetEnvVar + ")");
  add_model_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--sample", sample, "Sample size (default: whole dataset)");
  bench_cmd->add_option("--seed", seed, "Sampling seed");
  bench_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--report", report_format, "Report format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  bench_cmd->add_option("--out", out_path, "Write the report to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(puzzle_arg, solve_flags);
    std::optional<int> sample_opt;
    if (sample >= 0) sample_opt = sample;
    return run_bench(dataset_arg, bench_flags, sample_opt, seed, workers, report_format, out_path);
  } catch (const sudoku::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sudoku::MalformedLine& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
