#pragma once

#include <cstdint>
#include <vector>

#include "sudoku/dense.hpp"

namespace sudoku::lp {

// min c.y  subject to  E y = f,  l <= y <= u.
// Lower bounds must be finite; upper bounds may be +infinity.
struct Problem {
  std::vector<double> costs;   // n
  DenseMatrix eq_matrix;       // m x n
  std::vector<double> rhs;     // m
  std::vector<double> lower;   // n
  std::vector<double> upper;   // n

  int num_vars() const { return static_cast<int>(costs.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status s);

// Basis snapshot for warm-starting a re-solve with the same constraint rows
// and bounds (e.g. a reweighted objective). Entries < n are structural
// columns; n + i is the phase-1 artificial of row i.
struct Basis {
  std::vector<int> basic;               // m entries
  std::vector<std::uint8_t> at_upper;   // n entries, nonbasic bound side
};

struct Options {
  double feas_tol = 1e-9;
  double cost_tol = 1e-9;
  int max_iters = 0;  // 0 means 20*(m+n)
  // When set and compatible with the problem, phase 1 is skipped.
  const Basis* warm_start = nullptr;
  // Also compute a maximal-support point of the optimal face (face_point
  // below): from the optimal vertex, walk along every zero-reduced-cost
  // edge direction that admits a positive step. Useful when a caller needs
  // an interior-like optimal solution rather than an extreme one.
  bool face_point = false;
};

struct Solution {
  Status status = Status::IterationLimit;
  std::vector<double> point;  // n entries, present iff Optimal
  double objective = 0.0;
  int iterations = 0;
  Basis basis;  // filled iff Optimal
  std::vector<double> face_point;  // filled iff Optimal and requested
};

// Two-phase primal simplex over bounded variables. Returns a vertex (basic
// feasible) solution; deterministic for identical inputs. Dantzig pricing,
// switching permanently to Bland's rule after 3*(m+n) degenerate pivots.
// Throws DimensionMismatch on inconsistent inputs.
Solution solve(const Problem& p, const Options& opts = {});

}  // namespace sudoku::lp
