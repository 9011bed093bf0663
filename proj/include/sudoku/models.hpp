#pragma once

#include <array>
#include <string>

#include "sudoku/encode.hpp"
#include "sudoku/lp.hpp"

namespace sudoku {

enum class Formulation { LP1, LP2 };

// One solver configuration: plain l1 (reweighted = false) or iteratively
// reweighted l1, through either linear-programming form, over x >= 0 or
// 0 <= x <= 1.
struct ModelConfig {
  Formulation formulation = Formulation::LP2;
  bool reweighted = false;
  double epsilon = 0.5;       // reweighting offset, used iff reweighted
  int max_reweight = 10;      // L
  double reweight_tol = 1e-10;
  bool bounded = false;       // false: x >= 0, true: 0 <= x <= 1
  lp::Options lp;             // engine tolerances; warm_start is managed internally
};

struct LpFailed : Error {
  explicit LpFailed(lp::Status s)
      : Error(std::string("lp solve failed: ") + lp::to_string(s)), status(s) {}
  lp::Status status;
};

// Positive per-variable weights of the weighted l1 objective.
using WeightVector = std::array<double, kVariables>;

// w_k = 1 / (|x_prev_k| + epsilon). Requires epsilon > 0.
WeightVector reweight(const IndicatorVector& x_prev, double epsilon);

// Minimize ||x||_1 subject to A x = b and the configured bound set.
// LP1 solves over split variables [xp; xn] >= 0 and returns xp - xn;
// LP2 minimizes 1.x over x directly. Throws LpFailed on any non-optimal
// engine status.
IndicatorVector solve_p1(const ConstraintSystem& sys, const ModelConfig& cfg);

// Iteratively reweighted l1: up to cfg.max_reweight weighted solves, stopping
// early when the iterate moves less than cfg.reweight_tol in l2 norm.
IndicatorVector solve_wp1(const ConstraintSystem& sys, const ModelConfig& cfg);

}  // namespace sudoku
