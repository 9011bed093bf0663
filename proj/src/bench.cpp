#include "sudoku/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sudoku/oracle.hpp"

namespace sudoku {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Rejection-sampled bounded draw; uniform_int_distribution is not pinned down
// by the standard, and reports must reproduce across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open dataset file: " + path.string());

  std::vector<DatasetEntry> entries;
  std::string line;
  int line_number = 0;
  int short_clue_warnings = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trimmed(line);
    if (text.empty() || text[0] == '#') continue;
    DatasetEntry entry;
    try {
      entry.puzzle = parse_grid(text);
    } catch (const MalformedInput& e) {
      throw MalformedLine("line " + std::to_string(line_number) + ": " + e.what(), line_number);
    }
    entry.line_number = line_number;
    if (entry.puzzle.filled_count() < 17 && ++short_clue_warnings <= 5)
      std::cerr << "warning: line " << line_number << " has only " << entry.puzzle.filled_count()
                << " clues\n";
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<int> sample_indices(int population, int k, std::uint64_t seed) {
  if (k < 0 || k > population) throw std::invalid_argument("sample size exceeds population");
  std::vector<int> pool(static_cast<std::size_t>(population));
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(population - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

BatchReport run_batch(const std::vector<DatasetEntry>& entries, const ModelConfig& cfg,
                      std::optional<int> sample_size, std::uint64_t seed, int workers,
                      const PipelineOptions& pipeline) {
  const auto start = std::chrono::steady_clock::now();
  const int population = static_cast<int>(entries.size());
  std::vector<int> selected;
  if (sample_size.has_value())
    selected = sample_indices(population, *sample_size, seed);
  else {
    selected.resize(static_cast<std::size_t>(population));
    std::iota(selected.begin(), selected.end(), 0);
  }

  std::vector<PuzzleResult> results(selected.size());
  std::atomic<std::size_t> cursor{0};

  auto work = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= selected.size()) break;
      const DatasetEntry& entry = entries[static_cast<std::size_t>(selected[i])];
      PuzzleResult r;
      r.line_number = entry.line_number;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        SolveOutcome outcome = solve_pipeline(entry.puzzle, cfg, entry.reference, pipeline);
        if (outcome.success) {
          // Every reported success is checked against the exact solver.
          const std::optional<Grid> truth = backtrack_solve(entry.puzzle);
          if (!truth.has_value() || !(*truth == outcome.final_grid)) {
            std::cerr << "warning: line " << entry.line_number
                      << ": solution failed oracle verification\n";
            outcome.success = false;
            outcome.stage = Stage::Failed;
            outcome.difficulty = Difficulty::Devil;
          }
        }
        r.stage = outcome.stage;
        r.difficulty = outcome.difficulty;
        r.attempts = outcome.step3_attempts;
      } catch (const std::exception& e) {
        std::cerr << "warning: line " << entry.line_number << ": " << e.what() << "\n";
        r.stage = Stage::Failed;
        r.difficulty = Difficulty::Devil;
      }
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      results[i] = r;
    }
  };

  const int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(selected.size())));
  if (thread_count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  BatchReport report;
  report.config.formulation = cfg.formulation;
  report.config.reweighted = cfg.reweighted;
  report.config.bounded = cfg.bounded;
  report.config.epsilon = cfg.epsilon;
  report.config.strategy = pipeline.enable_strategy;
  report.config.sample_size = sample_size;
  report.config.seed = seed;
  report.config.workers = workers;
  report.total = static_cast<int>(results.size());
  for (const PuzzleResult& r : results) {
    switch (r.stage) {
      case Stage::First: ++report.first_solving; break;
      case Stage::Step1: ++report.step1; break;
      case Stage::Step2: ++report.step2; break;
      case Stage::Step3: ++report.step3; break;
      case Stage::Failed: break;
    }
  }
  report.solved_total = report.first_solving + report.step1 + report.step2 + report.step3;
  report.per_puzzle = std::move(results);
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::string method_name(const BatchConfig& c) {
  std::string name = c.reweighted ? "(Weighted " : "(";
  name += c.formulation == Formulation::LP1 ? "LP1)" : "LP2)";
  return name;
}

std::string percent(int part, int total, int decimals) {
  if (total == 0) return "-";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << 100.0 * part / total << "%";
  return os.str();
}

void emit_table(const BatchReport& r, std::ostream& out) {
  out << "Methods\tConstraint set\teps\tFirst Solving\tStep 1\tStep 2\tStep 3\tTotal\tTime(s)\n";
  if (r.total == 0) return;
  out << method_name(r.config) << '\t' << (r.config.bounded ? "{0<=x<=1}" : "{x>=0}") << '\t';
  if (r.config.reweighted)
    out << r.config.epsilon;
  else
    out << '-';
  out << '\t' << r.first_solving << "/ " << percent(r.first_solving, r.total, 1) << '\t' << r.step1
      << '\t' << r.step2 << '\t' << r.step3 << '\t' << r.solved_total << "/ "
      << percent(r.solved_total, r.total, 2) << '\t' << r.elapsed_seconds << '\n';
}

void emit_csv(const BatchReport& r, std::ostream& out) {
  out << "line,stage,difficulty,attempts,millis\n";
  for (const PuzzleResult& p : r.per_puzzle)
    out << p.line_number << ',' << to_string(p.stage) << ',' << to_string(p.difficulty) << ','
        << p.attempts << ',' << p.millis << '\n';
}

nlohmann::json config_to_json(const BatchConfig& c) {
  nlohmann::json j;
  j["method"] = c.formulation == Formulation::LP1 ? "lp1" : "lp2";
  j["model"] = c.reweighted ? "wp1" : "p1";
  j["bounded"] = c.bounded;
  j["epsilon"] = c.epsilon;
  j["strategy"] = c.strategy ? "full" : "none";
  if (c.sample_size.has_value())
    j["sample"] = *c.sample_size;
  else
    j["sample"] = nullptr;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

BatchConfig config_from_json(const nlohmann::json& j) {
  BatchConfig c;
  c.formulation = j.at("method").get<std::string>() == "lp1" ? Formulation::LP1 : Formulation::LP2;
  c.reweighted = j.at("model").get<std::string>() == "wp1";
  c.bounded = j.at("bounded").get<bool>();
  c.epsilon = j.at("epsilon").get<double>();
  c.strategy = j.at("strategy").get<std::string>() == "full";
  if (!j.at("sample").is_null()) c.sample_size = j.at("sample").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.at("workers").get<int>();
  return c;
}

}  // namespace

std::string report_to_json(const BatchReport& r) {
  nlohmann::json j;
  j["config"] = config_to_json(r.config);
  j["total"] = r.total;
  j["first_solving"] = r.first_solving;
  j["step1"] = r.step1;
  j["step2"] = r.step2;
  j["step3"] = r.step3;
  j["solved_total"] = r.solved_total;
  j["elapsed_seconds"] = r.elapsed_seconds;
  nlohmann::json rows = nlohmann::json::array();
  for (const PuzzleResult& p : r.per_puzzle) {
    nlohmann::json row;
    row["line"] = p.line_number;
    row["stage"] = to_string(p.stage);
    row["difficulty"] = to_string(p.difficulty);
    row["attempts"] = p.attempts;
    row["millis"] = p.millis;
    rows.push_back(std::move(row));
  }
  j["per_puzzle"] = std::move(rows);
  return j.dump(2) + "\n";
}

BatchReport report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  BatchReport r;
  r.config = config_from_json(j.at("config"));
  r.total = j.at("total").get<int>();
  r.first_solving = j.at("first_solving").get<int>();
  r.step1 = j.at("step1").get<int>();
  r.step2 = j.at("step2").get<int>();
  r.step3 = j.at("step3").get<int>();
  r.solved_total = j.at("solved_total").get<int>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  for (const nlohmann::json& row : j.at("per_puzzle")) {
    PuzzleResult p;
    p.line_number = row.at("line").get<int>();
    p.stage = stage_from_string(row.at("stage").get<std::string>());
    p.difficulty = difficulty_of(p.stage);
    p.attempts = row.at("attempts").get<int>();
    p.millis = row.at("millis").get<double>();
    r.per_puzzle.push_back(p);
  }
  return r;
}

void emit_report(const BatchReport& r, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::Table: emit_table(r, out); break;
    case ReportFormat::Json: out << report_to_json(r); break;
    case ReportFormat::Csv: emit_csv(r, out); break;
  }
  if (!out) throw IoError("failed to write report");
}

void emit_report(const BatchReport& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open report file: " + path.string());
  emit_report(r, format, out);
}

}  // namespace sudoku
