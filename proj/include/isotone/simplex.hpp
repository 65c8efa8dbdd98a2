#pragma once

// Dense two-phase simplex for the small LPs behind the isotonicity
// certifier. Solves  min c.x  s.t.  A x = b, x >= 0.
//
// Pivoting uses Bland's rule (smallest eligible index enters; among tied
// ratios the row whose basic variable has the smallest index leaves), which
// cannot cycle, so every solve terminates. Phase 1 minimizes the sum of
// artificial variables; a positive optimum is the infeasibility certificate.
// Reduced costs are recomputed from the current basis each iteration; the
// tableaus here are tiny and the recomputation sidesteps drift.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "isotone/errors.hpp"

namespace isotone {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;      // primal point (original variables), valid when Optimal
  double objective = 0.0;     // phase-2 objective, or phase-1 residual when Infeasible
};

namespace lpdetail {

class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> rows, std::vector<double> rhs, int n_struct)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), n_struct_(n_struct) {
    m_ = static_cast<int>(rows_.size());
    // Make every right-hand side nonnegative, then append the artificial
    // identity block so the artificials form the starting basis.
    for (int i = 0; i < m_; ++i)
      if (rhs_[static_cast<std::size_t>(i)] < 0.0) {
        rhs_[static_cast<std::size_t>(i)] = -rhs_[static_cast<std::size_t>(i)];
        for (double& v : rows_[static_cast<std::size_t>(i)]) v = -v;
      }
    for (int i = 0; i < m_; ++i) {
      auto& r = rows_[static_cast<std::size_t>(i)];
      r.resize(static_cast<std::size_t>(n_struct_ + m_), 0.0);
      r[static_cast<std::size_t>(n_struct_ + i)] = 1.0;
      basis_.push_back(n_struct_ + i);
    }
  }

  int rows() const { return m_; }
  int structural() const { return n_struct_; }
  const std::vector<int>& basis() const { return basis_; }
  double rhs(int i) const { return rhs_[static_cast<std::size_t>(i)]; }
  double coeff(int i, int j) const {
    return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  // Bland iteration for min cost.x over the allowed column range.
  // Returns false when optimal.
  bool iterate(const std::vector<double>& cost, int allowed_cols, double tol) {
    // reduced costs r_j = c_j - y.col_j with y_i = cost of basic var in row i
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (is_basic(j)) continue;
      double r = cost[static_cast<std::size_t>(j)];
      for (int i = 0; i < m_; ++i)
        r -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * coeff(i, j);
      if (r < -tol) {
        enter = j;
        break;  // smallest index
      }
    }
    if (enter < 0) return false;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      const double a = coeff(i, enter);
      if (a > tol) {
        const double ratio = rhs(i) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 &&
             (leave < 0 || basis_[static_cast<std::size_t>(i)] <
                               basis_[static_cast<std::size_t>(leave)]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw numerical_error("simplex: unbounded direction in a boxed program");
    pivot(leave, enter);
    return true;
  }

  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (int i = 0; i < m_; ++i)
      z += cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * rhs(i);
    return z;
  }

  // After phase 1: pivot basic artificials onto structural columns where
  // possible and drop rows that reduced to 0 = 0.
  void eliminate_artificials(double tol, double clamp) {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_struct_) continue;
      // a basic artificial sits at (numerically) zero; clear the residue
      if (std::abs(rhs_[static_cast<std::size_t>(i)]) <= clamp)
        rhs_[static_cast<std::size_t>(i)] = 0.0;
      int col = -1;
      for (int j = 0; j < n_struct_; ++j)
        if (std::abs(coeff(i, j)) > tol && !is_basic(j)) {
          col = j;
          break;
        }
      if (col >= 0) pivot(i, col);
    }
    for (int i = m_ - 1; i >= 0; --i)
      if (basis_[static_cast<std::size_t>(i)] >= n_struct_) {
        rows_.erase(rows_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
      }
  }

  std::vector<double> extract(int n) const {
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < n)
        x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = rhs(i);
    return x;
  }

 private:
  bool is_basic(int j) const {
    for (int b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(int row, int col) {
    auto& pr = rows_[static_cast<std::size_t>(row)];
    const double p = pr[static_cast<std::size_t>(col)];
    for (double& v : pr) v /= p;
    rhs_[static_cast<std::size_t>(row)] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      auto& ri = rows_[static_cast<std::size_t>(i)];
      const double f = ri[static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ri.size(); ++j) ri[j] -= f * pr[j];
      ri[static_cast<std::size_t>(col)] = 0.0;
      rhs_[static_cast<std::size_t>(i)] -= f * rhs_[static_cast<std::size_t>(row)];
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  int m_ = 0;
  int n_struct_ = 0;
};

}  // namespace lpdetail

// min cost.x  s.t.  a x = b, x >= 0. feas_tol bounds the phase-1 residual
// accepted as feasible.
inline LpSolution simplex_solve(const std::vector<std::vector<double>>& a,
                                const std::vector<double>& b, const std::vector<double>& cost,
                                double feas_tol = 1e-9, double pivot_tol = 1e-9) {
  if (a.size() != b.size()) throw structural_error("simplex: row count mismatch");
  const int n = a.empty() ? static_cast<int>(cost.size()) : static_cast<int>(a.front().size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw structural_error("simplex: ragged rows");
  if (static_cast<int>(cost.size()) != n) throw structural_error("simplex: cost length mismatch");

  lpdetail::Tableau t(a, b, n);
  const int total = n + t.rows();

  // Feasibility threshold follows the data scale: boxed activity programs
  // carry right-hand sides of order 1e6 and accumulate roundoff accordingly.
  double bscale = 1.0;
  for (double v : b) bscale = std::max(bscale, std::abs(v));
  const double feas = feas_tol * bscale;

  std::vector<double> phase1(static_cast<std::size_t>(total), 0.0);
  for (int j = n; j < total; ++j) phase1[static_cast<std::size_t>(j)] = 1.0;

  constexpr int kMaxIter = 200000;
  int iter = 0;
  while (t.iterate(phase1, total, pivot_tol))
    if (++iter > kMaxIter) throw numerical_error("simplex: phase 1 exceeded iteration cap");

  const double residual = t.objective(phase1);
  if (residual > feas) return {LpStatus::Infeasible, {}, residual};

  t.eliminate_artificials(pivot_tol, feas);

  std::vector<double> phase2(cost);
  phase2.resize(static_cast<std::size_t>(n + t.rows()), 0.0);
  while (t.iterate(phase2, n, pivot_tol))
    if (++iter > kMaxIter) throw numerical_error("simplex: phase 2 exceeded iteration cap");

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x = t.extract(n);
  sol.objective = t.objective(phase2);
  return sol;
}

struct PositiveCombination {
  bool feasible = false;
  std::vector<double> weights;      // convex weights over the input vectors
  std::vector<double> combination;  // sum of weighted vectors, entrywise >= -tol
  double phase1_residual = 0.0;     // > tol certifies infeasibility
};

// Decide whether the convex hull of the given vectors meets the nonnegative
// orthant: find lambda >= 0, sum lambda = 1, sum lambda_k v_k >= 0, or prove
// there is none.
inline PositiveCombination lp_feasible_positive_combination(
    const std::vector<std::vector<double>>& vectors, double feas_tol = 1e-9) {
  if (vectors.empty()) throw structural_error("positive combination: empty vector list");
  const int k = static_cast<int>(vectors.size());
  const int n = static_cast<int>(vectors.front().size());
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n)
      throw structural_error("positive combination: mixed dimensions");

  // columns: k weights, then n surplus variables
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  {
    std::vector<double> norm(static_cast<std::size_t>(k + n), 0.0);
    for (int j = 0; j < k; ++j) norm[static_cast<std::size_t>(j)] = 1.0;
    rows.push_back(std::move(norm));
    rhs.push_back(1.0);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(k + n), 0.0);
    for (int j = 0; j < k; ++j)
      row[static_cast<std::size_t>(j)] = vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    row[static_cast<std::size_t>(k + i)] = -1.0;
    rows.push_back(std::move(row));
    rhs.push_back(0.0);
  }

  const std::vector<double> zero_cost(static_cast<std::size_t>(k + n), 0.0);
  const LpSolution sol = simplex_solve(rows, rhs, zero_cost, feas_tol);

  PositiveCombination out;
  out.phase1_residual = (sol.status == LpStatus::Infeasible) ? sol.objective : 0.0;
  if (sol.status != LpStatus::Optimal) return out;

  out.feasible = true;
  out.weights.assign(sol.x.begin(), sol.x.begin() + k);
  out.combination.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      out.combination[static_cast<std::size_t>(i)] +=
          out.weights[static_cast<std::size_t>(j)] *
          vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return out;
}

}  // namespace isotone
