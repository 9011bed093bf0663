#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sudoku/bench.hpp"
#include "sudoku/oracle.hpp"

namespace py = pybind11;
using namespace sudoku;

namespace {

ModelConfig config_from_kwargs(const std::string& model, const std::string& method, bool bounded,
                               double epsilon) {
  ModelConfig cfg;
  if (model != "p1" && model != "wp1") throw std::invalid_argument("model must be 'p1' or 'wp1'");
  if (method != "lp1" && method != "lp2") throw std::invalid_argument("method must be 'lp1' or 'lp2'");
  cfg.reweighted = model == "wp1";
  cfg.formulation = method == "lp1" ? Formulation::LP1 : Formulation::LP2;
  cfg.bounded = bounded;
  cfg.epsilon = epsilon;
  return cfg;
}

py::array_t<double> indicator_to_array(const IndicatorVector& x) {
  py::array_t<double> out(kVariables);
  std::copy(x.begin(), x.end(), out.mutable_data());
  return out;
}

IndicatorVector array_to_indicator(const py::array_t<double>& arr) {
  const auto buf = arr.request();
  if (buf.ndim != 1 || buf.shape[0] != kVariables)
    throw std::invalid_argument("indicator vector must have 729 entries");
  IndicatorVector x{};
  const double* data = static_cast<const double*>(buf.ptr);
  std::copy(data, data + kVariables, x.begin());
  return x;
}

py::dict outcome_to_dict(const SolveOutcome& outcome) {
  py::dict d;
  d["success"] = outcome.success;
  d["solution"] = outcome.success ? py::object(py::str(format_grid(outcome.final_grid))) : py::none();
  d["stage"] = to_string(outcome.stage);
  d["difficulty"] = to_string(outcome.difficulty);
  d["step3_attempts"] = outcome.step3_attempts;
  d["millis"] = std::chrono::duration<double, std::milli>(outcome.elapsed).count();
  return d;
}

}  // namespace

PYBIND11_MODULE(sudoku_lp, m) {
  m.doc() = "Sudoku solving via l1 / reweighted-l1 linear programming";

  m.def("parse_grid", [](const std::string& text) { return format_grid(parse_grid(text)); },
        py::arg("text"),
        "Normalizes a puzzle string (81 significant characters, '0'/'.' blanks) to the canonical "
        "'0' form.");

  m.def("pretty", [](const std::string& text) { return format_pretty(parse_grid(text)); },
        py::arg("grid"), "9-line rendering with '.' for blanks.");

  m.def(
      "validate",
      [](const std::string& text) {
        const ValidationResult vr = validate(parse_grid(text));
        py::dict d;
        d["status"] = vr.status == GridStatus::Solved       ? "solved"
                      : vr.status == GridStatus::Incomplete ? "incomplete"
                                                            : "conflicted";
        py::list conflicts;
        for (int k = 0; k < kGridCells; ++k)
          if (vr.conflicts[static_cast<std::size_t>(k)]) conflicts.append(k);
        d["conflicts"] = conflicts;
        return d;
      },
      py::arg("grid"));

  m.def(
      "build_system",
      [](const std::string& text) {
        const ConstraintSystem sys = build_system(parse_grid(text));
        py::array_t<double> matrix({sys.matrix.rows(), sys.matrix.cols()});
        for (int i = 0; i < sys.matrix.rows(); ++i)
          for (int j = 0; j < sys.matrix.cols(); ++j) matrix.mutable_at(i, j) = sys.matrix(i, j);
        py::dict d;
        d["matrix"] = matrix;
        d["rhs"] = py::array_t<double>(py::ssize_t(sys.rhs.size()), sys.rhs.data());
        d["clue_count"] = sys.clue_count;
        py::dict blocks;
        blocks["row"] = py::make_tuple(sys.blocks.row.first, sys.blocks.row.second);
        blocks["col"] = py::make_tuple(sys.blocks.col.first, sys.blocks.col.second);
        blocks["box"] = py::make_tuple(sys.blocks.box.first, sys.blocks.box.second);
        blocks["cell"] = py::make_tuple(sys.blocks.cell.first, sys.blocks.cell.second);
        blocks["clue"] = py::make_tuple(sys.blocks.clue.first, sys.blocks.clue.second);
        d["blocks"] = blocks;
        return d;
      },
      py::arg("grid"), "The (324 + clues) x 729 binary equality system of a puzzle.");

  m.def(
      "grid_to_indicator",
      [](const std::string& text) { return indicator_to_array(grid_to_indicator(parse_grid(text))); },
      py::arg("grid"));

  m.def(
      "round_to_grid",
      [](const py::array_t<double>& x) { return format_grid(round_to_grid(array_to_indicator(x))); },
      py::arg("indicator"), "Per-cell argmax decoding, ties to the smallest digit.");

  m.def(
      "solve_indicator",
      [](const std::string& text, const std::string& model, const std::string& method, bool bounded,
         double epsilon) {
        const ConstraintSystem sys = build_system(parse_grid(text));
        const ModelConfig cfg = config_from_kwargs(model, method, bounded, epsilon);
        const IndicatorVector x = cfg.reweighted ? solve_wp1(sys, cfg) : solve_p1(sys, cfg);
        return indicator_to_array(x);
      },
      py::arg("grid"), py::arg("model") = "p1", py::arg("method") = "lp2",
      py::arg("bounded") = false, py::arg("epsilon") = 0.5,
      "The raw 729-entry l1 / reweighted-l1 solution of a puzzle's system.");

  m.def(
      "solve",
      [](const std::string& text, const std::string& model, const std::string& method, bool bounded,
         double epsilon, bool strategy) {
        PipelineOptions pipeline;
        pipeline.enable_strategy = strategy;
        const SolveOutcome outcome =
            solve_pipeline(parse_grid(text), config_from_kwargs(model, method, bounded, epsilon),
                           std::nullopt, pipeline);
        return outcome_to_dict(outcome);
      },
      py::arg("grid"), py::arg("model") = "p1", py::arg("method") = "lp2",
      py::arg("bounded") = false, py::arg("epsilon") = 0.5, py::arg("strategy") = true,
      "Full restart pipeline; returns a dict with solution, stage and difficulty.");

  m.def(
      "backtrack_solve",
      [](const std::string& text) -> py::object {
        const auto solved = backtrack_solve(parse_grid(text));
        if (!solved.has_value()) return py::none();
        return py::str(format_grid(*solved));
      },
      py::arg("grid"), "Exact backtracking solution, or None.");

  m.def(
      "count_solutions",
      [](const std::string& text) {
        switch (count_solutions(parse_grid(text))) {
          case SolutionCount::Zero: return 0;
          case SolutionCount::One: return 1;
          default: return 2;
        }
      },
      py::arg("grid"), "0, 1, or 2 meaning 'two or more'.");

  m.def(
      "solve_lp",
      [](const py::array_t<double>& costs, const py::array_t<double>& eq_matrix,
         const py::array_t<double>& rhs, const py::array_t<double>& lower,
         const py::array_t<double>& upper) {
        const auto cbuf = costs.request();
        const auto mbuf = eq_matrix.request();
        const auto rbuf = rhs.request();
        if (mbuf.ndim != 2) throw std::invalid_argument("eq_matrix must be 2-dimensional");
        lp::Problem p;
        const int m = static_cast<int>(mbuf.shape[0]);
        const int n = static_cast<int>(mbuf.shape[1]);
        p.costs.assign(static_cast<const double*>(cbuf.ptr),
                       static_cast<const double*>(cbuf.ptr) + cbuf.shape[0]);
        p.rhs.assign(static_cast<const double*>(rbuf.ptr),
                     static_cast<const double*>(rbuf.ptr) + rbuf.shape[0]);
        const auto lbuf = lower.request();
        const auto ubuf = upper.request();
        p.lower.assign(static_cast<const double*>(lbuf.ptr),
                       static_cast<const double*>(lbuf.ptr) + lbuf.shape[0]);
        p.upper.assign(static_cast<const double*>(ubuf.ptr),
                       static_cast<const double*>(ubuf.ptr) + ubuf.shape[0]);
        p.eq_matrix = DenseMatrix(m, n);
        auto acc = eq_matrix.unchecked<2>();
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) p.eq_matrix(i, j) = acc(i, j);
        const lp::Solution sol = lp::solve(p);
        py::dict d;
        d["status"] = lp::to_string(sol.status);
        d["iterations"] = sol.iterations;
        if (sol.status == lp::Status::Optimal) {
          d["objective"] = sol.objective;
          d["x"] = py::array_t<double>(py::ssize_t(sol.point.size()), sol.point.data());
        } else {
          d["objective"] = py::none();
          d["x"] = py::none();
        }
        return d;
      },
      py::arg("costs"), py::arg("eq_matrix"), py::arg("rhs"), py::arg("lower"), py::arg("upper"),
      "min c.x s.t. eq_matrix x = rhs, lower <= x <= upper (numpy inf allowed in upper).");

  m.def(
      "load_dataset",
      [](const std::string& path) {
        py::list out;
        for (const DatasetEntry& e : load_dataset(path))
          out.append(py::make_tuple(e.line_number, format_grid(e.puzzle)));
        return out;
      },
      py::arg("path"), "List of (line_number, puzzle) tuples.");
}
