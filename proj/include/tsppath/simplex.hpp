#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "tsppath/graph.hpp"

namespace tsppath::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Row {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
};

// minimize cost . x  subject to rows, x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<double> cost;
  std::vector<Row> rows;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Solution {
  Status status = Status::kIterationLimit;
  std::vector<double> x;
  double value = 0.0;
  int pivots = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  double feasibility_tol = 1e-8;
  int degenerate_run_before_bland = 50;
  int max_pivots = 200000;
};

namespace detail {

// Dense two-phase tableau. Column layout: structural variables, then one
// slack/surplus per inequality row, then one artificial per row that needs
// one; the right-hand side lives in a separate vector.
class Tableau {
 public:
  Tableau(const Problem& p, const SimplexOptions& opt) : opt_(opt) {
    m_ = static_cast<int>(p.rows.size());
    nv_ = p.num_vars;
    int slack = 0;
    int art = 0;
    for (const Row& r : p.rows) {
      if (r.sense != Sense::kEqual) ++slack;
      const bool flip = r.rhs < 0;
      Sense s = r.sense;
      if (flip && s != Sense::kEqual)
        s = s == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
      if (s != Sense::kLessEqual) ++art;
    }
    first_art_ = nv_ + slack;
    cols_ = first_art_ + art;
    a_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    b_.assign(m_, 0.0);
    basis_.assign(m_, -1);

    int next_slack = nv_;
    int next_art = first_art_;
    for (int i = 0; i < m_; ++i) {
      const Row& r = p.rows[i];
      const double sign = r.rhs < 0 ? -1.0 : 1.0;
      Sense s = r.sense;
      if (sign < 0 && s != Sense::kEqual)
        s = s == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
      for (auto [j, coef] : r.terms) at(i, j) += sign * coef;
      b_[i] = sign * r.rhs;
      if (r.sense != Sense::kEqual) {
        at(i, next_slack) = s == Sense::kLessEqual ? 1.0 : -1.0;
        if (s == Sense::kLessEqual) basis_[i] = next_slack;
        ++next_slack;
      }
      if (s != Sense::kLessEqual) {
        at(i, next_art) = 1.0;
        basis_[i] = next_art++;
      }
    }
  }

  Solution solve(const std::vector<double>& cost) {
    Solution sol;
    // Phase 1: minimize the sum of artificials.
    if (first_art_ < cols_) {
      std::vector<double> c1(cols_, 0.0);
      for (int j = first_art_; j < cols_; ++j) c1[j] = 1.0;
      load_objective(c1);
      const Status st = iterate(cols_, sol.pivots);
      if (st == Status::kIterationLimit) {
        sol.status = st;
        return sol;
      }
      if (objective_value(c1) > opt_.feasibility_tol) {
        sol.status = Status::kInfeasible;
        return sol;
      }
      drive_out_artificials();
    }
    std::vector<double> c2(cols_, 0.0);
    for (int j = 0; j < nv_; ++j) c2[j] = cost[j];
    load_objective(c2);
    sol.status = iterate(first_art_, sol.pivots);
    if (sol.status != Status::kOptimal) return sol;
    sol.x.assign(nv_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nv_) sol.x[basis_[i]] = std::max(0.0, b_[i]);
    sol.value = 0.0;
    for (int j = 0; j < nv_; ++j) sol.value += cost[j] * sol.x[j];
    return sol;
  }

 private:
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  void load_objective(const std::vector<double>& c) {
    d_ = c;
    for (int i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &a_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
  }

  double objective_value(const std::vector<double>& c) const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += c[basis_[i]] * b_[i];
    return v;
  }

  // Dantzig pricing; after a run of degenerate pivots switch to Bland's rule
  // until the objective strictly improves again.
  Status iterate(int allowed_cols, int& pivots) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run >= opt_.degenerate_run_before_bland;
      int enter = -1;
      double best = -opt_.optimality_tol;
      for (int j = 0; j < allowed_cols; ++j) {
        if (d_[j] < best) {
          enter = j;
          if (bland) break;
          best = d_[j];
        }
      }
      if (enter < 0) return Status::kOptimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double aij = a_[static_cast<std::size_t>(i) * cols_ + enter];
        if (aij <= opt_.pivot_tol) continue;
        const double ratio = b_[i] / aij;
        const bool better = ratio < best_ratio - 1e-12;
        const bool tie = !better && ratio <= best_ratio + 1e-12;
        if (better || (tie && (bland ? basis_[i] < basis_[leave] : aij > best_pivot))) {
          leave = i;
          best_ratio = ratio;
          best_pivot = aij;
        }
      }
      if (leave < 0) return Status::kUnbounded;
      if (++pivots > opt_.max_pivots) return Status::kIterationLimit;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    double* prow = &a_[static_cast<std::size_t>(r) * cols_];
    const double inv = 1.0 / prow[c];
    for (int j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    b_[r] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &a_[static_cast<std::size_t>(i) * cols_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) {
        row[j] -= f * prow[j];
        if (std::abs(row[j]) < 1e-14) row[j] = 0.0;
      }
      row[c] = 0.0;
      b_[i] -= f * b_[r];
      if (std::abs(b_[i]) < 1e-14) b_[i] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0) {
      for (int j = 0; j < cols_; ++j) d_[j] -= f * prow[j];
      d_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Artificials still basic after phase 1 sit at zero; swap them for any
  // structural or slack column. Rows with no such column are redundant.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      int best = -1;
      double mag = opt_.pivot_tol;
      for (int j = 0; j < first_art_; ++j) {
        const double v = std::abs(at(i, j));
        if (v > mag) {
          mag = v;
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
    }
  }

  SimplexOptions opt_;
  int m_ = 0;
  int nv_ = 0;
  int cols_ = 0;
  int first_art_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> d_;
  std::vector<int> basis_;
};

}  // namespace detail

inline Solution solve(const Problem& problem, const SimplexOptions& options = {}) {
  if (static_cast<int>(problem.cost.size()) != problem.num_vars)
    throw Error("objective length does not match variable count");
  for (const Row& r : problem.rows)
    for (auto [j, c] : r.terms)
      if (j < 0 || j >= problem.num_vars) throw Error("row references unknown variable");
  detail::Tableau tableau(problem, options);
  return tableau.solve(problem.cost);
}

}  // namespace tsppath::lp
