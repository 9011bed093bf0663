#include "sudoku/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sudoku {

namespace {

// LP1 doubles the variables to [xp; xn] with stacked matrix [A, -A]; LP2
// works on x directly. Bounds follow the configured constraint set.
lp::Problem make_problem(const ConstraintSystem& sys, const ModelConfig& cfg) {
  const int m = sys.matrix.rows();
  const bool split = cfg.formulation == Formulation::LP1;
  const int n = split ? 2 * kVariables : kVariables;
  const double ub = cfg.bounded ? 1.0 : std::numeric_limits<double>::infinity();

  lp::Problem p;
  p.costs.assign(static_cast<std::size_t>(n), 1.0);
  p.rhs = sys.rhs;
  p.lower.assign(static_cast<std::size_t>(n), 0.0);
  p.upper.assign(static_cast<std::size_t>(n), ub);
  p.eq_matrix = DenseMatrix(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < kVariables; ++j) {
      const double v = sys.matrix(i, j);
      if (v == 0.0) continue;
      p.eq_matrix(i, j) = v;
      if (split) p.eq_matrix(i, kVariables + j) = -v;
    }
  }
  return p;
}

// Costs scaled so the largest weight is exactly 1. A positive rescaling
// leaves the optimal set unchanged; with the uniform weights of the first
// reweighting pass the scaled costs coincide bitwise with the unweighted
// ones, and the scale keeps reduced costs well away from the tolerances
// when epsilon is large.
void set_costs(lp::Problem& p, const WeightVector& w, bool split) {
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, v);
  const double scale = 1.0 / wmax;
  for (int k = 0; k < kVariables; ++k) {
    const double c = w[static_cast<std::size_t>(k)] * scale;
    p.costs[static_cast<std::size_t>(k)] = c;
    if (split) p.costs[static_cast<std::size_t>(kVariables + k)] = c;
  }
}

IndicatorVector collapse_split(const std::vector<double>& p, const ModelConfig& cfg) {
  IndicatorVector x{};
  if (cfg.formulation == Formulation::LP1) {
    for (int k = 0; k < kVariables; ++k) {
      const double xp = p[static_cast<std::size_t>(k)];
      const double xn = p[static_cast<std::size_t>(kVariables + k)];
      if (std::min(xp, xn) > 1e-7)
        throw Error("split-variable complementarity violated at optimum");
      x[static_cast<std::size_t>(k)] = xp - xn;
    }
  } else {
    for (int k = 0; k < kVariables; ++k) x[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)];
  }
  return x;
}

// The vertex the simplex returned: what callers round.
IndicatorVector extract_point(const lp::Solution& sol, const ModelConfig& cfg) {
  return collapse_split(sol.point, cfg);
}

// A balanced interior point of the optimal face. The reference results were
// produced with an interior-point solver whose iterates spread over the whole
// optimal face; reweighting from an extreme point instead stalls, because a
// vertex is already optimal for the weights it induces. The face point is
// therefore what the reweighting loop feeds back, while returned solutions
// stay at vertices. On a uniquely solvable system the two coincide.
IndicatorVector extract_face_point(const lp::Solution& sol, const ModelConfig& cfg) {
  return collapse_split(sol.face_point.empty() ? sol.point : sol.face_point, cfg);
}

lp::Solution solve_or_throw(const lp::Problem& p, const lp::Options& opts) {
  lp::Solution sol = lp::solve(p, opts);
  if (sol.status != lp::Status::Optimal) throw LpFailed(sol.status);
  return sol;
}

}  // namespace

WeightVector reweight(const IndicatorVector& x_prev, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  WeightVector w;
  for (int k = 0; k < kVariables; ++k)
    w[static_cast<std::size_t>(k)] = 1.0 / (std::fabs(x_prev[static_cast<std::size_t>(k)]) + epsilon);
  return w;
}

IndicatorVector solve_p1(const ConstraintSystem& sys, const ModelConfig& cfg) {
  if (cfg.reweighted) throw std::invalid_argument("solve_p1 requires reweighted = false");
  lp::Problem p = make_problem(sys, cfg);
  lp::Options opts = cfg.lp;
  opts.warm_start = nullptr;
  return extract_point(solve_or_throw(p, opts), cfg);
}

IndicatorVector solve_wp1(const ConstraintSystem& sys, const ModelConfig& cfg) {
  if (!cfg.reweighted) throw std::invalid_argument("solve_wp1 requires reweighted = true");
  if (cfg.max_reweight < 1) throw std::invalid_argument("max_reweight must be at least 1");

  lp::Problem p = make_problem(sys, cfg);
  const bool split = cfg.formulation == Formulation::LP1;

  IndicatorVector x_ori{};  // face-point iterate driving the weights, starts at zero
  IndicatorVector x_new{};  // vertex solution handed back to the caller
  lp::Basis basis;
  bool have_basis = false;

  for (int i = 1; i <= cfg.max_reweight; ++i) {
    set_costs(p, reweight(x_ori, cfg.epsilon), split);
    lp::Options opts = cfg.lp;
    opts.warm_start = have_basis ? &basis : nullptr;
    opts.face_point = true;
    lp::Solution sol = solve_or_throw(p, opts);
    x_new = extract_point(sol, cfg);
    const IndicatorVector x_face = extract_face_point(sol, cfg);
    basis = std::move(sol.basis);
    have_basis = true;

    double dist2 = 0.0;
    for (int k = 0; k < kVariables; ++k) {
      const double d = x_face[static_cast<std::size_t>(k)] - x_ori[static_cast<std::size_t>(k)];
      dist2 += d * d;
    }
    if (std::sqrt(dist2) < cfg.reweight_tol) break;
    x_ori = x_face;
  }
  return x_new;
}

}  // namespace sudoku
