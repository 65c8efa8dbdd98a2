#pragma once

// Bernstein polynomial smoothing of Choquet cell averages on [0,1]. For a
// distorted Lebesgue capacity mu = u o lambda and degree n, the operator is
//
//   K(f)(x) = sum_k [ (C)int_{cell k} f dmu / mu(cell k) ] binom(n,k) x^k (1-x)^{n-k}
//
// over the n+1 cells [k/(n+1), (k+1)/(n+1)]. Cell masses are the exact
// u(1/(n+1)); cell integrals go through choquet_interval.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isotone/capacity.hpp"
#include "isotone/choquet.hpp"
#include "isotone/errors.hpp"

namespace isotone {

// Bernstein basis weights via the multiplicative recurrence. Never forms a
// factorial; x above 1/2 is folded onto the mirror weights so the recurrence
// base (1-x)^n cannot underflow at desk degrees.
inline std::vector<double> bernstein_weights(int degree, double x) {
  if (degree < 1) throw domain_error("bernstein: degree must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw domain_error("bernstein: x must lie in [0,1]");
  const auto n = static_cast<std::size_t>(degree);
  if (x > 0.5) {
    std::vector<double> w = bernstein_weights(degree, 1.0 - x);
    std::reverse(w.begin(), w.end());
    return w;
  }
  std::vector<double> w(n + 1, 0.0);
  const double q = 1.0 - x;
  w[0] = std::pow(q, degree);
  const double ratio = x / q;
  for (std::size_t k = 1; k <= n; ++k)
    w[k] = w[k - 1] * ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
  return w;
}

struct BkcConfig {
  int degree = 8;
  DistortionFn distortion = DistortionFn::identity();
  int cell_samples = 10000;       // per-cell quadrature points
  std::vector<double> eval_grid;  // abscissas in [0,1]

  void validate() const {
    if (degree < 1) throw domain_error("bkc: degree must be >= 1");
    if (cell_samples < 8) throw domain_error("bkc: need at least 8 samples per cell");
    if (eval_grid.empty()) throw domain_error("bkc: empty evaluation grid");
    for (double x : eval_grid)
      if (!(x >= 0.0 && x <= 1.0)) throw domain_error("bkc: grid point outside [0,1]");
  }
};

inline std::vector<double> uniform_grid(int points) {
  if (points < 2) throw domain_error("uniform_grid: need >= 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return g;
}

// Evaluate K(f) on the configured grid; returns (x, K(f)(x)) pairs.
template <class F>
std::vector<std::pair<double, double>> bkc_apply(F&& f, const BkcConfig& cfg) {
  cfg.validate();
  const int cells = cfg.degree + 1;
  const double width = 1.0 / cells;
  const double cell_mass = cfg.distortion(width);
  if (!(cell_mass > 1e-300))
    throw domain_error("bkc: distortion vanishes on a cell of width " + std::to_string(width) +
                       "; the cell average is undefined");

  std::vector<double> ratio(static_cast<std::size_t>(cells));
  for (int k = 0; k < cells; ++k) {
    const double a = static_cast<double>(k) / cells;
    const double b = static_cast<double>(k + 1) / cells;
    ratio[static_cast<std::size_t>(k)] =
        choquet_interval(f, cfg.distortion, a, b, cfg.cell_samples) / cell_mass;
  }

  std::vector<std::pair<double, double>> out;
  out.reserve(cfg.eval_grid.size());
  for (double x : cfg.eval_grid) {
    const std::vector<double> w = bernstein_weights(cfg.degree, x);
    double acc = 0.0;
    for (int k = 0; k < cells; ++k)
      acc += ratio[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(k)];
    out.emplace_back(x, acc);
  }
  return out;
}

// Sup-norm error of K(f) against f on the grid, one row per degree.
template <class F>
std::vector<std::pair<int, double>> bkc_error_table(F&& f, const std::vector<int>& degrees,
                                                    const DistortionFn& u, int cell_samples,
                                                    const std::vector<double>& eval_grid) {
  std::vector<std::pair<int, double>> rows;
  std::vector<int> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  for (int n : sorted) {
    BkcConfig cfg{n, u, cell_samples, eval_grid};
    const auto values = bkc_apply(f, cfg);
    double sup = 0.0;
    for (const auto& [x, kx] : values) sup = std::max(sup, std::abs(kx - f(x)));
    rows.emplace_back(n, sup);
  }
  return rows;
}

}  // namespace isotone
