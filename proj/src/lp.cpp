#include "sudoku/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sudoku/errors.hpp"

namespace sudoku::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;    // direction entries eligible to block
constexpr double kDegenTol = 1e-12;   // step sizes counted as degenerate
constexpr double kSingularTol = 1e-11;
constexpr double kResidualTol = 1e-7;  // spot-check trigger for refactoring
constexpr int kRefactorEvery = 50;

enum VarState : std::uint8_t { AtLower = 0, AtUpper = 1, Basic = 2 };

struct Eta {
  int r;
  double inv_pivot;
  std::vector<double> d;
};

// One simplex run over the variables [structural 0..n) + [artificial n..n+m).
// Artificials carry cost 1 in phase 1 and are fixed to zero afterwards (or as
// soon as they leave the basis).
class BoundedSimplex {
 public:
  BoundedSimplex(const Problem& p, const Options& opts)
      : p_(p), opts_(opts), m_(p.num_rows()), n_(p.num_vars()), ntot_(n_ + m_) {
    max_iters_ = opts.max_iters > 0 ? opts.max_iters : 20 * (m_ + n_);
    bland_after_ = 3 * (m_ + n_);
  }

  Solution run() {
    build_columns();
    Solution sol;
    bool warm = try_warm_start();
    if (!warm) cold_start();
    Status st = iterate();
    if (st == Status::IterationLimit && !restarted_) {
      // Numerical restart: once, from scratch, with Bland's rule throughout.
      restarted_ = true;
      bland_ = true;
      cold_start();
      st = iterate();
    }
    sol.status = st;
    sol.iterations = iterations_;
    if (st == Status::Optimal) {
      finalize(sol);
    }
    return sol;
  }

 private:
  const Problem& p_;
  const Options& opts_;
  int m_, n_, ntot_;
  int max_iters_ = 0;
  int bland_after_ = 0;

  // Column supports (structural columns from eq_matrix, then artificials).
  std::vector<int> col_ptr_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<double> sigma_;  // artificial column signs

  std::vector<double> lower_, upper_, x_;
  std::vector<std::uint8_t> state_;
  std::vector<int> basic_;

  // Basis factorization: B is first permuted into near-triangular form by a
  // singleton peel over its sparsity pattern, then factorized densely with
  // threshold pivoting and compressed into sparse L/U factors. Sudoku bases
  // have a handful of nonzeros per column, so the factors stay close to the
  // basis itself and the triangular solves touch only true nonzeros.
  std::vector<double> lu_;       // dense scratch during factorization
  std::vector<int> row_order_;   // pre-permutation: step p eliminates matrix row row_order_[p]
  std::vector<int> piv_;         // threshold-pivoting swaps on top of row_order_
  std::vector<int> l_ptr_, l_idx_, u_ptr_, u_idx_;
  std::vector<double> l_val_, u_val_, u_diag_;
  std::vector<int> lt_ptr_, lt_idx_, ut_ptr_, ut_idx_;
  std::vector<double> lt_val_, ut_val_;
  std::vector<Eta> etas_;

  int phase_ = 1;
  bool bland_ = false;
  bool restarted_ = false;
  int iterations_ = 0;
  int degenerate_pivots_ = 0;

  std::vector<double> work_, y_, d_, solve_buf_;

  double cost_of(int j) const {
    if (phase_ == 1) return j >= n_ ? 1.0 : 0.0;
    return j < n_ ? p_.costs[static_cast<std::size_t>(j)] : 0.0;
  }

  void build_columns() {
    col_ptr_.assign(static_cast<std::size_t>(ntot_) + 1, 0);
    const DenseMatrix& E = p_.eq_matrix;
    std::size_t nnz = 0;
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < m_; ++i)
        if (E(i, j) != 0.0) ++nnz;
      col_ptr_[static_cast<std::size_t>(j) + 1] = static_cast<int>(nnz);
    }
    for (int i = 0; i < m_; ++i) col_ptr_[static_cast<std::size_t>(n_ + i) + 1] = static_cast<int>(nnz + i + 1);
    col_row_.resize(nnz + static_cast<std::size_t>(m_));
    col_val_.resize(nnz + static_cast<std::size_t>(m_));
    std::size_t pos = 0;
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < m_; ++i)
        if (E(i, j) != 0.0) {
          col_row_[pos] = i;
          col_val_[pos] = E(i, j);
          ++pos;
        }
    // Artificial signs are fixed later, once initial residuals are known.
    for (int i = 0; i < m_; ++i) {
      col_row_[pos] = i;
      col_val_[pos] = 1.0;
      ++pos;
    }
  }

  void set_sigma(int i, double s) {
    sigma_[static_cast<std::size_t>(i)] = s;
    col_val_[static_cast<std::size_t>(col_ptr_[static_cast<std::size_t>(n_ + i)])] = s;
  }

  // Residual b - A x over nonbasic structural values, used to seed artificials.
  std::vector<double> initial_residual() const {
    std::vector<double> r = p_.rhs;
    for (int j = 0; j < n_; ++j) {
      const double xj = x_[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        r[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] -= col_val_[static_cast<std::size_t>(t)] * xj;
    }
    return r;
  }

  void reset_variable_arrays() {
    lower_.assign(static_cast<std::size_t>(ntot_), 0.0);
    upper_.assign(static_cast<std::size_t>(ntot_), kInf);
    for (int j = 0; j < n_; ++j) {
      lower_[static_cast<std::size_t>(j)] = p_.lower[static_cast<std::size_t>(j)];
      upper_[static_cast<std::size_t>(j)] = p_.upper[static_cast<std::size_t>(j)];
    }
    x_.assign(static_cast<std::size_t>(ntot_), 0.0);
    state_.assign(static_cast<std::size_t>(ntot_), AtLower);
    sigma_.assign(static_cast<std::size_t>(m_), 1.0);
    basic_.assign(static_cast<std::size_t>(m_), -1);
    etas_.clear();
  }

  void cold_start() {
    reset_variable_arrays();
    for (int j = 0; j < n_; ++j) x_[static_cast<std::size_t>(j)] = lower_[static_cast<std::size_t>(j)];
    std::vector<double> r = initial_residual();
    for (int i = 0; i < m_; ++i) {
      set_sigma(i, r[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0);
      const int a = n_ + i;
      basic_[static_cast<std::size_t>(i)] = a;
      state_[static_cast<std::size_t>(a)] = Basic;
      x_[static_cast<std::size_t>(a)] = std::fabs(r[static_cast<std::size_t>(i)]);
    }
    phase_ = 1;
    factorize();
  }

  bool try_warm_start() {
    const Basis* w = opts_.warm_start;
    if (w == nullptr) return false;
    if (static_cast<int>(w->basic.size()) != m_ || static_cast<int>(w->at_upper.size()) != n_) return false;
    reset_variable_arrays();
    std::vector<char> used(static_cast<std::size_t>(ntot_), 0);
    for (int j : w->basic) {
      if (j < 0 || j >= ntot_ || used[static_cast<std::size_t>(j)]) return false;
      used[static_cast<std::size_t>(j)] = 1;
    }
    for (int j = 0; j < n_; ++j) {
      if (w->at_upper[static_cast<std::size_t>(j)] && !std::isfinite(upper_[static_cast<std::size_t>(j)])) return false;
      state_[static_cast<std::size_t>(j)] = w->at_upper[static_cast<std::size_t>(j)] ? AtUpper : AtLower;
      x_[static_cast<std::size_t>(j)] =
          w->at_upper[static_cast<std::size_t>(j)] ? upper_[static_cast<std::size_t>(j)] : lower_[static_cast<std::size_t>(j)];
    }
    {
      // Sigma as the cold start would choose it, so artificial columns in the
      // warm basis mean the same thing across re-solves of the same system.
      std::vector<double> x_saved = x_;
      for (int j = 0; j < n_; ++j)
        x_[static_cast<std::size_t>(j)] = lower_[static_cast<std::size_t>(j)];
      std::vector<double> r = initial_residual();
      for (int i = 0; i < m_; ++i) set_sigma(i, r[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0);
      x_ = x_saved;
    }
    for (int i = 0; i < m_; ++i) {
      const int j = w->basic[static_cast<std::size_t>(i)];
      basic_[static_cast<std::size_t>(i)] = j;
      state_[static_cast<std::size_t>(j)] = Basic;
    }
    // Artificials are frozen at zero in a warm start; basic ones may remain.
    for (int i = 0; i < m_; ++i) upper_[static_cast<std::size_t>(n_ + i)] = 0.0;
    if (!factorize()) return false;
    recompute_basic_values();
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[static_cast<std::size_t>(i)];
      const double v = x_[static_cast<std::size_t>(j)];
      if (v < lower_[static_cast<std::size_t>(j)] - opts_.feas_tol || v > upper_[static_cast<std::size_t>(j)] + opts_.feas_tol)
        return false;
    }
    phase_ = 2;
    return true;
  }

  // --- basis factorization -------------------------------------------------

  // Orders basis positions so that column and row singletons (over the
  // active submatrix) pivot first; only the leftover core needs real
  // elimination. Fills row_order_ and reorders basic_ in place.
  void peel_order() {
    const std::size_t um = static_cast<std::size_t>(m_);
    std::vector<int> row_deg(um, 0), col_deg(um, 0);
    std::vector<int> row_ptr(um + 1, 0);
    // Memberships: row -> basis positions covering it.
    for (int p = 0; p < m_; ++p) {
      const int j = basic_[static_cast<std::size_t>(p)];
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        ++row_ptr[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)]) + 1];
    }
    for (int i = 0; i < m_; ++i) row_ptr[static_cast<std::size_t>(i) + 1] += row_ptr[static_cast<std::size_t>(i)];
    std::vector<int> row_member(static_cast<std::size_t>(row_ptr[um]));
    {
      std::vector<int> fill = row_ptr;
      for (int p = 0; p < m_; ++p) {
        const int j = basic_[static_cast<std::size_t>(p)];
        for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t) {
          const int i = col_row_[static_cast<std::size_t>(t)];
          row_member[static_cast<std::size_t>(fill[static_cast<std::size_t>(i)]++)] = p;
        }
      }
    }
    for (int p = 0; p < m_; ++p) {
      const int j = basic_[static_cast<std::size_t>(p)];
      col_deg[static_cast<std::size_t>(p)] =
          col_ptr_[static_cast<std::size_t>(j) + 1] - col_ptr_[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < m_; ++i)
      row_deg[static_cast<std::size_t>(i)] = row_ptr[static_cast<std::size_t>(i) + 1] - row_ptr[static_cast<std::size_t>(i)];

    std::vector<char> row_done(um, 0), col_done(um, 0);
    std::vector<int> col_of_step, row_of_step;
    col_of_step.reserve(um);
    row_of_step.reserve(um);
    std::vector<int> queue_cols, queue_rows;
    for (int p = 0; p < m_; ++p)
      if (col_deg[static_cast<std::size_t>(p)] == 1) queue_cols.push_back(p);
    for (int i = 0; i < m_; ++i)
      if (row_deg[static_cast<std::size_t>(i)] == 1) queue_rows.push_back(i);

    auto retire_row = [&](int i) {
      row_done[static_cast<std::size_t>(i)] = 1;
      for (int t = row_ptr[static_cast<std::size_t>(i)]; t < row_ptr[static_cast<std::size_t>(i) + 1]; ++t) {
        const int p = row_member[static_cast<std::size_t>(t)];
        if (col_done[static_cast<std::size_t>(p)]) continue;
        if (--col_deg[static_cast<std::size_t>(p)] == 1) queue_cols.push_back(p);
      }
    };
    auto retire_col = [&](int p) {
      col_done[static_cast<std::size_t>(p)] = 1;
      const int j = basic_[static_cast<std::size_t>(p)];
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t) {
        const int i = col_row_[static_cast<std::size_t>(t)];
        if (row_done[static_cast<std::size_t>(i)]) continue;
        if (--row_deg[static_cast<std::size_t>(i)] == 1) queue_rows.push_back(i);
      }
    };

    std::size_t qc = 0, qr = 0;
    while (qc < queue_cols.size() || qr < queue_rows.size()) {
      if (qc < queue_cols.size()) {
        const int p = queue_cols[qc++];
        if (col_done[static_cast<std::size_t>(p)]) continue;
        const int j = basic_[static_cast<std::size_t>(p)];
        int pivot_row = -1;
        for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
          if (!row_done[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])])
            pivot_row = col_row_[static_cast<std::size_t>(t)];
        if (pivot_row < 0) continue;  // column went empty; leave it to the core
        col_of_step.push_back(p);
        row_of_step.push_back(pivot_row);
        retire_col(p);
        retire_row(pivot_row);
        continue;
      }
      const int i = queue_rows[qr++];
      if (row_done[static_cast<std::size_t>(i)]) continue;
      int pivot_col = -1;
      for (int t = row_ptr[static_cast<std::size_t>(i)]; t < row_ptr[static_cast<std::size_t>(i) + 1]; ++t)
        if (!col_done[static_cast<std::size_t>(row_member[static_cast<std::size_t>(t)])])
          pivot_col = row_member[static_cast<std::size_t>(t)];
      if (pivot_col < 0) continue;
      col_of_step.push_back(pivot_col);
      row_of_step.push_back(i);
      retire_col(pivot_col);
      retire_row(i);
    }
    for (int p = 0; p < m_; ++p)
      if (!col_done[static_cast<std::size_t>(p)]) col_of_step.push_back(p);
    for (int i = 0; i < m_; ++i)
      if (!row_done[static_cast<std::size_t>(i)]) row_of_step.push_back(i);

    std::vector<int> new_basic(um);
    for (int k = 0; k < m_; ++k) new_basic[static_cast<std::size_t>(k)] = basic_[static_cast<std::size_t>(col_of_step[static_cast<std::size_t>(k)])];
    basic_ = std::move(new_basic);
    row_order_ = std::move(row_of_step);
  }

  bool factorize() {
    etas_.clear();
    peel_order();
    const std::size_t um = static_cast<std::size_t>(m_);
    std::vector<int> row_slot(um);  // matrix row -> dense row position
    for (int p = 0; p < m_; ++p) row_slot[static_cast<std::size_t>(row_order_[static_cast<std::size_t>(p)])] = p;

    lu_.assign(um * um, 0.0);
    piv_.assign(um, 0);
    for (int k = 0; k < m_; ++k) {
      const int j = basic_[static_cast<std::size_t>(k)];
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        lu_[static_cast<std::size_t>(row_slot[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])]) * um +
            static_cast<std::size_t>(k)] = col_val_[static_cast<std::size_t>(t)];
    }

    // Threshold pivoting: keep the peel's diagonal whenever it is within a
    // factor 100 of the column maximum, otherwise swap for stability.
    for (int k = 0; k < m_; ++k) {
      int prow = k;
      double pmax = 0.0;
      for (int i = k; i < m_; ++i) {
        const double v = std::fabs(lu_[static_cast<std::size_t>(i) * um + static_cast<std::size_t>(k)]);
        if (v > pmax) {
          pmax = v;
          prow = i;
        }
      }
      if (pmax < kSingularTol) return false;
      if (std::fabs(lu_[static_cast<std::size_t>(k) * um + static_cast<std::size_t>(k)]) >= 0.01 * pmax) prow = k;
      piv_[static_cast<std::size_t>(k)] = prow;
      if (prow != k)
        for (int j = 0; j < m_; ++j)
          std::swap(lu_[static_cast<std::size_t>(k) * um + static_cast<std::size_t>(j)],
                    lu_[static_cast<std::size_t>(prow) * um + static_cast<std::size_t>(j)]);
      const double inv = 1.0 / lu_[static_cast<std::size_t>(k) * um + static_cast<std::size_t>(k)];
      for (int i = k + 1; i < m_; ++i) {
        double& lik = lu_[static_cast<std::size_t>(i) * um + static_cast<std::size_t>(k)];
        if (lik == 0.0) continue;
        lik *= inv;
        const double f = lik;
        const double* rk = &lu_[static_cast<std::size_t>(k) * um];
        double* ri = &lu_[static_cast<std::size_t>(i) * um];
        for (int j = k + 1; j < m_; ++j) ri[j] -= f * rk[j];
      }
    }
    compress_factors();
    return true;
  }

  // Packs the dense LU scratch into sparse row lists (for ftran) and column
  // lists (for btran).
  void compress_factors() {
    const std::size_t um = static_cast<std::size_t>(m_);
    l_ptr_.assign(um + 1, 0);
    u_ptr_.assign(um + 1, 0);
    u_diag_.assign(um, 0.0);
    l_idx_.clear();
    l_val_.clear();
    u_idx_.clear();
    u_val_.clear();
    for (int i = 0; i < m_; ++i) {
      const double* ri = &lu_[static_cast<std::size_t>(i) * um];
      for (int j = 0; j < i; ++j)
        if (ri[j] != 0.0) {
          l_idx_.push_back(j);
          l_val_.push_back(ri[j]);
        }
      l_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(l_idx_.size());
      u_diag_[static_cast<std::size_t>(i)] = ri[i];
      for (int j = i + 1; j < m_; ++j)
        if (ri[j] != 0.0) {
          u_idx_.push_back(j);
          u_val_.push_back(ri[j]);
        }
      u_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(u_idx_.size());
    }
    // Transposed copies.
    lt_ptr_.assign(um + 1, 0);
    ut_ptr_.assign(um + 1, 0);
    for (std::size_t t = 0; t < l_idx_.size(); ++t) ++lt_ptr_[static_cast<std::size_t>(l_idx_[t]) + 1];
    for (std::size_t t = 0; t < u_idx_.size(); ++t) ++ut_ptr_[static_cast<std::size_t>(u_idx_[t]) + 1];
    for (int i = 0; i < m_; ++i) {
      lt_ptr_[static_cast<std::size_t>(i) + 1] += lt_ptr_[static_cast<std::size_t>(i)];
      ut_ptr_[static_cast<std::size_t>(i) + 1] += ut_ptr_[static_cast<std::size_t>(i)];
    }
    lt_idx_.assign(l_idx_.size(), 0);
    lt_val_.assign(l_val_.size(), 0.0);
    ut_idx_.assign(u_idx_.size(), 0);
    ut_val_.assign(u_val_.size(), 0.0);
    std::vector<int> lfill(lt_ptr_.begin(), lt_ptr_.end() - 1);
    std::vector<int> ufill(ut_ptr_.begin(), ut_ptr_.end() - 1);
    for (int i = 0; i < m_; ++i) {
      for (int t = l_ptr_[static_cast<std::size_t>(i)]; t < l_ptr_[static_cast<std::size_t>(i) + 1]; ++t) {
        const int j = l_idx_[static_cast<std::size_t>(t)];
        const int slot = lfill[static_cast<std::size_t>(j)]++;
        lt_idx_[static_cast<std::size_t>(slot)] = i;
        lt_val_[static_cast<std::size_t>(slot)] = l_val_[static_cast<std::size_t>(t)];
      }
      for (int t = u_ptr_[static_cast<std::size_t>(i)]; t < u_ptr_[static_cast<std::size_t>(i) + 1]; ++t) {
        const int j = u_idx_[static_cast<std::size_t>(t)];
        const int slot = ufill[static_cast<std::size_t>(j)]++;
        ut_idx_[static_cast<std::size_t>(slot)] = i;
        ut_val_[static_cast<std::size_t>(slot)] = u_val_[static_cast<std::size_t>(t)];
      }
    }
  }

  // Solve B z = v in place (v becomes z).
  void ftran(std::vector<double>& v) const {
    std::vector<double>& w = const_cast<BoundedSimplex*>(this)->solve_buf_;
    w.resize(static_cast<std::size_t>(m_));
    for (int p = 0; p < m_; ++p) w[static_cast<std::size_t>(p)] = v[static_cast<std::size_t>(row_order_[static_cast<std::size_t>(p)])];
    for (int k = 0; k < m_; ++k) {
      const int p = piv_[static_cast<std::size_t>(k)];
      if (p != k) std::swap(w[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(p)]);
    }
    for (int i = 0; i < m_; ++i) {
      double acc = w[static_cast<std::size_t>(i)];
      for (int t = l_ptr_[static_cast<std::size_t>(i)]; t < l_ptr_[static_cast<std::size_t>(i) + 1]; ++t)
        acc -= l_val_[static_cast<std::size_t>(t)] * w[static_cast<std::size_t>(l_idx_[static_cast<std::size_t>(t)])];
      w[static_cast<std::size_t>(i)] = acc;
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double acc = w[static_cast<std::size_t>(i)];
      for (int t = u_ptr_[static_cast<std::size_t>(i)]; t < u_ptr_[static_cast<std::size_t>(i) + 1]; ++t)
        acc -= u_val_[static_cast<std::size_t>(t)] * w[static_cast<std::size_t>(u_idx_[static_cast<std::size_t>(t)])];
      w[static_cast<std::size_t>(i)] = acc / u_diag_[static_cast<std::size_t>(i)];
    }
    v = w;
    for (const Eta& e : etas_) {
      const double t = v[static_cast<std::size_t>(e.r)] * e.inv_pivot;
      const double* d = e.d.data();
      for (int i = 0; i < m_; ++i) v[static_cast<std::size_t>(i)] -= d[i] * t;
      v[static_cast<std::size_t>(e.r)] = t;
    }
  }

  // Solve B^T y = v in place.
  void btran(std::vector<double>& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const Eta& e = *it;
      double acc = v[static_cast<std::size_t>(e.r)];
      const double* d = e.d.data();
      for (int i = 0; i < m_; ++i) acc -= d[i] * v[static_cast<std::size_t>(i)];
      acc += d[e.r] * v[static_cast<std::size_t>(e.r)];
      v[static_cast<std::size_t>(e.r)] = acc * e.inv_pivot;
    }
    // U^T forward solve over U's columns, then L^T backward over L's columns.
    for (int i = 0; i < m_; ++i) {
      double acc = v[static_cast<std::size_t>(i)];
      for (int t = ut_ptr_[static_cast<std::size_t>(i)]; t < ut_ptr_[static_cast<std::size_t>(i) + 1]; ++t)
        acc -= ut_val_[static_cast<std::size_t>(t)] * v[static_cast<std::size_t>(ut_idx_[static_cast<std::size_t>(t)])];
      v[static_cast<std::size_t>(i)] = acc / u_diag_[static_cast<std::size_t>(i)];
    }
    for (int i = m_ - 1; i >= 0; --i) {
      double acc = v[static_cast<std::size_t>(i)];
      for (int t = lt_ptr_[static_cast<std::size_t>(i)]; t < lt_ptr_[static_cast<std::size_t>(i) + 1]; ++t)
        acc -= lt_val_[static_cast<std::size_t>(t)] * v[static_cast<std::size_t>(lt_idx_[static_cast<std::size_t>(t)])];
      v[static_cast<std::size_t>(i)] = acc;
    }
    for (int k = m_ - 1; k >= 0; --k) {
      const int p = piv_[static_cast<std::size_t>(k)];
      if (p != k) std::swap(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(p)]);
    }
    std::vector<double>& w = const_cast<BoundedSimplex*>(this)->solve_buf_;
    w.resize(static_cast<std::size_t>(m_));
    for (int p = 0; p < m_; ++p) w[static_cast<std::size_t>(row_order_[static_cast<std::size_t>(p)])] = v[static_cast<std::size_t>(p)];
    v = w;
  }

  void scatter_column(int j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
      out[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] = col_val_[static_cast<std::size_t>(t)];
  }

  void recompute_basic_values() {
    work_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) work_[static_cast<std::size_t>(i)] = p_.rhs[static_cast<std::size_t>(i)];
    for (int j = 0; j < ntot_; ++j) {
      if (state_[static_cast<std::size_t>(j)] == Basic) continue;
      const double xj = x_[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        work_[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] -= col_val_[static_cast<std::size_t>(t)] * xj;
    }
    ftran(work_);
    for (int i = 0; i < m_; ++i) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] = work_[static_cast<std::size_t>(i)];
  }

  void refactorize() {
    if (!factorize()) {
      // Should not happen for a basis reached by valid pivots; handled by the
      // caller via the one-shot cold restart.
      throw Error("basis factorization failed");
    }
    recompute_basic_values();
  }

  // --- the simplex loop ----------------------------------------------------

  double phase1_objective() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[static_cast<std::size_t>(i)];
      if (j >= n_) s += x_[static_cast<std::size_t>(j)];
    }
    return s;
  }

  void freeze_artificial(int j) {
    upper_[static_cast<std::size_t>(j)] = 0.0;
    x_[static_cast<std::size_t>(j)] = 0.0;
  }

  void to_phase2() {
    for (int i = 0; i < m_; ++i) freeze_artificial_bounds_only(n_ + i);
    phase_ = 2;
  }

  void freeze_artificial_bounds_only(int j) {
    upper_[static_cast<std::size_t>(j)] = 0.0;
    if (state_[static_cast<std::size_t>(j)] != Basic) x_[static_cast<std::size_t>(j)] = 0.0;
  }

  Status iterate() {
    y_.resize(static_cast<std::size_t>(m_));
    d_.resize(static_cast<std::size_t>(m_));
    while (true) {
      if (phase_ == 1 && phase1_objective() <= 1e-12 * (1.0 + static_cast<double>(m_))) to_phase2();
      if (iterations_ >= max_iters_) return Status::IterationLimit;

      // Duals for the current basis.
      for (int i = 0; i < m_; ++i) y_[static_cast<std::size_t>(i)] = cost_of(basic_[static_cast<std::size_t>(i)]);
      btran(y_);

      // Pricing: Dantzig by default, Bland once degeneracy forced the switch.
      int q = -1;
      double best_viol = opts_.cost_tol;
      bool from_upper = false;
      for (int j = 0; j < ntot_; ++j) {
        const std::uint8_t st = state_[static_cast<std::size_t>(j)];
        if (st == Basic) continue;
        if (lower_[static_cast<std::size_t>(j)] == upper_[static_cast<std::size_t>(j)]) continue;
        double rc = cost_of(j);
        for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
          rc -= col_val_[static_cast<std::size_t>(t)] * y_[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])];
        double viol = 0.0;
        if (st == AtLower && rc < -opts_.cost_tol)
          viol = -rc;
        else if (st == AtUpper && rc > opts_.cost_tol)
          viol = rc;
        else
          continue;
        if (bland_) {
          q = j;
          from_upper = (st == AtUpper);
          break;
        }
        if (viol > best_viol) {
          best_viol = viol;
          q = j;
          from_upper = (st == AtUpper);
        }
      }
      if (q < 0) {
        if (phase_ == 1) {
          if (phase1_objective() > static_cast<double>(m_) * opts_.feas_tol) return Status::Infeasible;
          to_phase2();
          continue;
        }
        return Status::Optimal;
      }

      // Direction of basic values as the entering variable moves by t >= 0.
      scatter_column(q, d_);
      ftran(d_);
      if ((iterations_ & 15) == 0 && !ftran_accurate(q)) {
        refactorize();
        scatter_column(q, d_);
        ftran(d_);
      }
      const double s = from_upper ? -1.0 : 1.0;

      // Ratio test over blocking basic variables plus the entering bound span.
      double best_t = upper_[static_cast<std::size_t>(q)] - lower_[static_cast<std::size_t>(q)];
      int leave_pos = -1;
      double leave_dir = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double delta = -s * d_[static_cast<std::size_t>(i)];
        if (std::fabs(delta) <= kPivotTol) continue;
        const int bj = basic_[static_cast<std::size_t>(i)];
        double ratio;
        if (delta < 0.0) {
          ratio = (lower_[static_cast<std::size_t>(bj)] - x_[static_cast<std::size_t>(bj)]) / delta;
        } else {
          const double ub = upper_[static_cast<std::size_t>(bj)];
          if (!std::isfinite(ub)) continue;
          ratio = (ub - x_[static_cast<std::size_t>(bj)]) / delta;
        }
        if (ratio < 0.0) ratio = 0.0;
        if (ratio < best_t - 1e-12) {
          best_t = ratio;
          leave_pos = i;
          leave_dir = delta;
        } else if (leave_pos >= 0 && ratio <= best_t + 1e-12) {
          if (bland_) {
            if (bj < basic_[static_cast<std::size_t>(leave_pos)]) {
              leave_pos = i;
              leave_dir = delta;
            }
          } else if (std::fabs(d_[static_cast<std::size_t>(i)]) >
                     std::fabs(d_[static_cast<std::size_t>(leave_pos)])) {
            leave_pos = i;
            leave_dir = delta;
          }
        }
      }

      if (!std::isfinite(best_t) && leave_pos < 0) {
        if (phase_ == 1) return Status::IterationLimit;  // cannot happen in exact arithmetic
        return Status::Unbounded;
      }

      ++iterations_;
      const double step = best_t;
      if (step <= kDegenTol) {
        if (!bland_ && ++degenerate_pivots_ > bland_after_) bland_ = true;
      }

      // Move the entering variable and all basic values.
      if (step > 0.0) {
        for (int i = 0; i < m_; ++i) {
          const double delta = -s * d_[static_cast<std::size_t>(i)];
          if (delta != 0.0) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] += delta * step;
        }
      }

      if (leave_pos < 0) {
        // Bound flip: no basis change.
        state_[static_cast<std::size_t>(q)] = from_upper ? AtLower : AtUpper;
        x_[static_cast<std::size_t>(q)] =
            from_upper ? lower_[static_cast<std::size_t>(q)] : upper_[static_cast<std::size_t>(q)];
        continue;
      }

      const int lv = basic_[static_cast<std::size_t>(leave_pos)];
      x_[static_cast<std::size_t>(q)] = from_upper ? upper_[static_cast<std::size_t>(q)] - step
                                                   : lower_[static_cast<std::size_t>(q)] + step;
      if (leave_dir < 0.0) {
        state_[static_cast<std::size_t>(lv)] = AtLower;
        x_[static_cast<std::size_t>(lv)] = lower_[static_cast<std::size_t>(lv)];
      } else {
        state_[static_cast<std::size_t>(lv)] = AtUpper;
        x_[static_cast<std::size_t>(lv)] = upper_[static_cast<std::size_t>(lv)];
      }
      if (lv >= n_ && phase_ == 1) freeze_artificial(lv);  // never re-enters

      basic_[static_cast<std::size_t>(leave_pos)] = q;
      state_[static_cast<std::size_t>(q)] = Basic;

      Eta e;
      e.r = leave_pos;
      e.d = d_;
      e.inv_pivot = 1.0 / d_[static_cast<std::size_t>(leave_pos)];
      etas_.push_back(std::move(e));
      if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactorize();
    }
  }

  // Cheap residual spot-check of the factorized FTRAN result.
  bool ftran_accurate(int q) {
    // || B d - a_q ||_inf computed through the column supports.
    std::vector<double> r(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double di = d_[static_cast<std::size_t>(i)];
      if (di == 0.0) continue;
      const int j = basic_[static_cast<std::size_t>(i)];
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        r[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] += col_val_[static_cast<std::size_t>(t)] * di;
    }
    for (int t = col_ptr_[static_cast<std::size_t>(q)]; t < col_ptr_[static_cast<std::size_t>(q) + 1]; ++t)
      r[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] -= col_val_[static_cast<std::size_t>(t)];
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::fabs(v));
    return worst <= kResidualTol;
  }

  double feasibility_error(const std::vector<double>& full_x) const {
    std::vector<double> resid = p_.rhs;
    for (int j = 0; j < ntot_; ++j) {
      const double xj = full_x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (int t = col_ptr_[static_cast<std::size_t>(j)]; t < col_ptr_[static_cast<std::size_t>(j) + 1]; ++t)
        resid[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])] -= col_val_[static_cast<std::size_t>(t)] * xj;
    }
    double worst = 0.0;
    for (double v : resid) worst = std::max(worst, std::fabs(v));
    for (int j = 0; j < n_; ++j) {
      const double xj = full_x[static_cast<std::size_t>(j)];
      worst = std::max(worst, p_.lower[static_cast<std::size_t>(j)] - xj);
      if (std::isfinite(p_.upper[static_cast<std::size_t>(j)]))
        worst = std::max(worst, xj - p_.upper[static_cast<std::size_t>(j)]);
    }
    return worst;
  }

  // A balanced interior point of the optimal face, in the spirit of the
  // analytic center an interior-point solver converges to. Face directions
  // are the edge directions of the zero-reduced-cost nonbasic variables;
  // the point is re-centered along each of them in round-robin passes, so
  // no coordinate stays pinned to the optimal vertex the simplex returned.
  // On a singleton face no direction admits a step and the vertex comes
  // back unchanged.
  std::vector<double> face_interior_point() {
    for (int i = 0; i < m_; ++i) y_[static_cast<std::size_t>(i)] = cost_of(basic_[static_cast<std::size_t>(i)]);
    btran(y_);

    std::vector<int> dirs;
    std::vector<double> dir_cols;  // cached B^-1 a_q per direction
    for (int q = 0; q < n_; ++q) {
      const std::uint8_t st = state_[static_cast<std::size_t>(q)];
      if (st == Basic) continue;
      if (lower_[static_cast<std::size_t>(q)] == upper_[static_cast<std::size_t>(q)]) continue;
      double rc = cost_of(q);
      for (int t = col_ptr_[static_cast<std::size_t>(q)]; t < col_ptr_[static_cast<std::size_t>(q) + 1]; ++t)
        rc -= col_val_[static_cast<std::size_t>(t)] * y_[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(t)])];
      if (std::fabs(rc) > 1e-7) continue;
      scatter_column(q, d_);
      ftran(d_);
      dirs.push_back(q);
      dir_cols.insert(dir_cols.end(), d_.begin(), d_.end());
    }

    std::vector<double> xf = x_;
    constexpr int kCenterRounds = 3;
    constexpr double kSpanCap = 1.0;
    for (int round = 0; round < kCenterRounds; ++round) {
      for (std::size_t t = 0; t < dirs.size(); ++t) {
        const int q = dirs[t];
        const double* d = &dir_cols[t * static_cast<std::size_t>(m_)];
        // Admissible spans forward (x_q increasing) and backward.
        double fwd = std::min(kSpanCap, upper_[static_cast<std::size_t>(q)] - xf[static_cast<std::size_t>(q)]);
        double bwd = std::min(kSpanCap, xf[static_cast<std::size_t>(q)] - lower_[static_cast<std::size_t>(q)]);
        for (int i = 0; i < m_ && (fwd > 0.0 || bwd > 0.0); ++i) {
          const double delta = -d[i];
          if (std::fabs(delta) <= kPivotTol) continue;
          const int bj = basic_[static_cast<std::size_t>(i)];
          const double v = xf[static_cast<std::size_t>(bj)];
          const double lo = lower_[static_cast<std::size_t>(bj)];
          const double hi = upper_[static_cast<std::size_t>(bj)];
          if (delta < 0.0) {
            fwd = std::min(fwd, (v - lo) / -delta);
            if (std::isfinite(hi)) bwd = std::min(bwd, (hi - v) / -delta);
          } else {
            if (std::isfinite(hi)) fwd = std::min(fwd, (hi - v) / delta);
            bwd = std::min(bwd, (v - lo) / delta);
          }
        }
        const double alpha = 0.5 * (std::max(fwd, 0.0) - std::max(bwd, 0.0));
        if (std::fabs(alpha) <= 1e-12) continue;
        xf[static_cast<std::size_t>(q)] += alpha;
        for (int i = 0; i < m_; ++i)
          if (d[i] != 0.0) xf[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] -= d[i] * alpha;
      }
    }
    return xf;
  }

  void finalize(Solution& sol) {
    // Fresh factorization and basic values; drift from the eta file is gone.
    refactorize();
    sol.point.assign(p_.costs.size(), 0.0);
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) {
      sol.point[static_cast<std::size_t>(j)] = x_[static_cast<std::size_t>(j)];
      obj += p_.costs[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
    }
    sol.objective = obj;
    sol.basis.basic = basic_;
    sol.basis.at_upper.assign(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < n_; ++j)
      sol.basis.at_upper[static_cast<std::size_t>(j)] = (state_[static_cast<std::size_t>(j)] == AtUpper) ? 1 : 0;

    // The returned point must satisfy the advertised feasibility contract.
    const double worst = feasibility_error(x_);
    if (worst > opts_.feas_tol) throw Error("lp solution failed the feasibility check: " + std::to_string(worst));

    if (opts_.face_point) {
      const std::vector<double> xf = face_interior_point();
      if (feasibility_error(xf) > opts_.feas_tol)
        throw Error("face point failed the feasibility check");
      sol.face_point.assign(xf.begin(), xf.begin() + n_);
    }
  }
};

void check_problem(const Problem& p) {
  const std::size_t n = p.costs.size();
  const std::size_t m = p.rhs.size();
  if (p.eq_matrix.rows() != static_cast<int>(m) || p.eq_matrix.cols() != static_cast<int>(n))
    throw DimensionMismatch("eq_matrix is " + std::to_string(p.eq_matrix.rows()) + "x" +
                            std::to_string(p.eq_matrix.cols()) + ", expected " + std::to_string(m) + "x" +
                            std::to_string(n));
  if (p.lower.size() != n || p.upper.size() != n)
    throw DimensionMismatch("bound vectors must have one entry per variable");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(p.lower[j])) throw DimensionMismatch("lower bounds must be finite");
    if (p.lower[j] > p.upper[j]) throw DimensionMismatch("lower bound exceeds upper bound");
  }
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

Solution solve(const Problem& p, const Options& opts) {
  check_problem(p);
  if (p.num_vars() == 0) throw DimensionMismatch("problem has no variables");
  BoundedSimplex simplex(p, opts);
  return simplex.run();
}

}  // namespace sudoku::lp
