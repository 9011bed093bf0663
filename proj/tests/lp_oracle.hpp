#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fixtures.hpp"
#include "sudoku/lp.hpp"

// Brute-force LP oracle: enumerates every basis (column subset of size m with
// every nonbasic variable pinned to one of its bounds) and keeps the best
// feasible vertex. Independent of the simplex implementation.
namespace lp_oracle {

// Random equality-form LP with mixed finite/infinite bounds. When
// feasible_by_construction the rhs comes from a random in-bounds point, and
// variables with an infinite upper bound get a nonnegative cost so the
// optimum stays finite.
inline sudoku::lp::Problem random_problem(TestRng& rng, bool feasible_by_construction) {
  const int m = 1 + rng.bounded(6);
  const int n = m + 1 + rng.bounded(8 - m);
  sudoku::lp::Problem p;
  p.costs.assign(static_cast<std::size_t>(n), 0.0);
  p.rhs.assign(static_cast<std::size_t>(m), 0.0);
  p.lower.assign(static_cast<std::size_t>(n), 0.0);
  p.upper.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  p.eq_matrix = sudoku::DenseMatrix(m, n);
  for (int j = 0; j < n; ++j) {
    p.lower[static_cast<std::size_t>(j)] = -1.0 + 2.0 * rng.real01();
    if (rng.bounded(4) != 0)
      p.upper[static_cast<std::size_t>(j)] = p.lower[static_cast<std::size_t>(j)] + 2.0 * rng.real01();
    p.costs[static_cast<std::size_t>(j)] = -1.0 + 2.0 * rng.real01();
    if (!std::isfinite(p.upper[static_cast<std::size_t>(j)]) && p.costs[static_cast<std::size_t>(j)] < 0.0)
      p.costs[static_cast<std::size_t>(j)] = -p.costs[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) p.eq_matrix(i, j) = static_cast<double>(rng.bounded(5) - 2);
  if (feasible_by_construction) {
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double span =
          std::isfinite(p.upper[static_cast<std::size_t>(j)]) ? p.upper[static_cast<std::size_t>(j)] - p.lower[static_cast<std::size_t>(j)] : 2.0;
      z[static_cast<std::size_t>(j)] = p.lower[static_cast<std::size_t>(j)] + span * rng.real01();
    }
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += p.eq_matrix(i, j) * z[static_cast<std::size_t>(j)];
      p.rhs[static_cast<std::size_t>(i)] = acc;
    }
  } else {
    for (int i = 0; i < m; ++i) p.rhs[static_cast<std::size_t>(i)] = -2.0 + 4.0 * rng.real01();
  }
  return p;
}

inline bool full_row_rank(const sudoku::lp::Problem& p) {
  const int m = p.num_rows();
  const int n = p.num_vars();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p.eq_matrix(i, j);
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int prow = -1;
    double pmax = 1e-8;
    for (int i = rank; i < m; ++i)
      if (std::fabs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) > pmax) {
        pmax = std::fabs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]);
        prow = i;
      }
    if (prow < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(prow)]);
    for (int i = rank + 1; i < m; ++i) {
      const double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
                       a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank == m;
}

struct Result {
  bool feasible = false;
  double best = std::numeric_limits<double>::infinity();
};

// Gaussian elimination solve of an m x m system; empty on singularity.
inline std::optional<std::vector<double>> dense_solve(std::vector<std::vector<double>> a,
                                                      std::vector<double> b) {
  const int m = static_cast<int>(b.size());
  for (int k = 0; k < m; ++k) {
    int prow = k;
    double pmax = std::fabs(a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)]);
    for (int i = k + 1; i < m; ++i) {
      const double v = std::fabs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
      if (v > pmax) {
        pmax = v;
        prow = i;
      }
    }
    if (pmax < 1e-10) return std::nullopt;
    std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(prow)]);
    std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(prow)]);
    for (int i = k + 1; i < m; ++i) {
      const double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                       a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      if (f == 0.0) continue;
      for (int j = k; j < m; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    double acc = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      acc -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  return x;
}

inline Result enumerate_vertices(const sudoku::lp::Problem& p, double tol = 1e-7) {
  const int m = p.num_rows();
  const int n = p.num_vars();
  Result result;

  std::vector<int> combo(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) combo[static_cast<std::size_t>(i)] = i;

  auto evaluate_combo = [&](const std::vector<int>& basis) {
    std::vector<int> nonbasic;
    for (int j = 0, b = 0; j < n; ++j) {
      if (b < m && basis[static_cast<std::size_t>(b)] == j)
        ++b;
      else
        nonbasic.push_back(j);
    }
    // Every assignment of nonbasic variables to a finite bound.
    const int nn = static_cast<int>(nonbasic.size());
    for (int mask = 0; mask < (1 << nn); ++mask) {
      bool valid = true;
      std::vector<double> xn(static_cast<std::size_t>(nn));
      for (int t = 0; t < nn; ++t) {
        const int j = nonbasic[static_cast<std::size_t>(t)];
        if (mask & (1 << t)) {
          if (!std::isfinite(p.upper[static_cast<std::size_t>(j)])) {
            valid = false;
            break;
          }
          xn[static_cast<std::size_t>(t)] = p.upper[static_cast<std::size_t>(j)];
        } else {
          xn[static_cast<std::size_t>(t)] = p.lower[static_cast<std::size_t>(j)];
        }
      }
      if (!valid) continue;

      std::vector<std::vector<double>> B(static_cast<std::size_t>(m),
                                         std::vector<double>(static_cast<std::size_t>(m)));
      std::vector<double> rhs = p.rhs;
      for (int i = 0; i < m; ++i)
        for (int b = 0; b < m; ++b)
          B[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] =
              p.eq_matrix(i, basis[static_cast<std::size_t>(b)]);
      for (int t = 0; t < nn; ++t) {
        const int j = nonbasic[static_cast<std::size_t>(t)];
        const double v = xn[static_cast<std::size_t>(t)];
        if (v == 0.0) continue;
        for (int i = 0; i < m; ++i) rhs[static_cast<std::size_t>(i)] -= p.eq_matrix(i, j) * v;
      }
      const auto xb = dense_solve(B, rhs);
      if (!xb.has_value()) continue;

      bool ok = true;
      double obj = 0.0;
      for (int b = 0; b < m && ok; ++b) {
        const int j = basis[static_cast<std::size_t>(b)];
        const double v = (*xb)[static_cast<std::size_t>(b)];
        if (v < p.lower[static_cast<std::size_t>(j)] - tol || v > p.upper[static_cast<std::size_t>(j)] + tol)
          ok = false;
        obj += p.costs[static_cast<std::size_t>(j)] * v;
      }
      if (!ok) continue;
      for (int t = 0; t < nn; ++t)
        obj += p.costs[static_cast<std::size_t>(nonbasic[static_cast<std::size_t>(t)])] *
               xn[static_cast<std::size_t>(t)];
      result.feasible = true;
      if (obj < result.best) result.best = obj;
    }
  };

  // All C(n, m) column subsets in lexicographic order.
  if (m > n) return result;
  while (true) {
    evaluate_combo(combo);
    int i = m - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return result;
}

}  // namespace lp_oracle
