#pragma once

// The sublinear map Phi(A) = lambda_1(A) * ones on symmetric matrices:
// evaluation, Rayleigh subgradients, membership in the support (PSD trace-one
// components), and the randomized checks for eigenvalue monotonicity and
// perturbation bounds and for order preservation of spectral powers.
// Also the positive-part construction x -> A x^+ on vectors.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/random.hpp"
#include "isotone/report.hpp"
#include "isotone/sym_matrix.hpp"

namespace isotone {

// Linear map Sym(n) -> R^m given by m symmetric matrices acting through the
// trace pairing: T(B)_j = <W_j, B>.
struct SupportFunctional {
  std::vector<SymMatrix> components;

  std::vector<double> apply(const SymMatrix& b) const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& w : components) out.push_back(w.inner(b));
    return out;
  }
};

inline std::vector<double> lambda1_operator(const SymMatrix& a) {
  const double top = eigen_decompose(a).eigenvalues.front();
  return std::vector<double>(static_cast<std::size_t>(a.dim()), top);
}

// Rank-one Rayleigh subgradient: every component is v v^T for a unit top
// eigenvector v, so T(A) = lambda_1(A) * ones and T(B) <= lambda_1(B) * ones
// for all B. At eigenvalue multiplicity this returns one member of the
// subdifferential (the solver's first column).
inline SupportFunctional lambda1_subgradient(const SymMatrix& a) {
  const EigenSystem es = eigen_decompose(a);
  const std::vector<double>& v = es.eigenvectors.front();
  const int n = a.dim();
  SymMatrix w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      w.set(i, j, v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
  SupportFunctional t;
  t.components.assign(static_cast<std::size_t>(n), w);
  return t;
}

// Support membership: every component PSD with unit trace. These are exactly
// the positive linear maps sending the identity to the all-ones vector.
inline bool is_in_lambda1_support(const SupportFunctional& t, double tol) {
  if (t.components.empty()) return false;
  for (const auto& w : t.components) {
    if (lambda_min(w) < -tol) return false;
    if (std::abs(w.trace() - 1.0) > tol) return false;
  }
  return true;
}

// Eigenvalue monotonicity (ordered pairs built as B = A + PSD) and the
// perturbation bound max_k |lambda_k(A) - lambda_k(B)| <= ||A - B||.
inline PropertyReport check_weyl_properties(int dim, int trials, std::uint64_t seed,
                                            double tol = 1e-9) {
  PropertyReport report;
  report.suite = "weyl";
  report.trials = trials;
  report.seed = seed;
  auto& monotone = report.check("eigenvalue_monotonicity", tol);
  auto& perturb = report.check("perturbation_bound", tol);

  for (int t = 0; t < trials; ++t) {
    auto eng = trial_engine(seed, static_cast<std::uint64_t>(t));
    const SymMatrix a = random_symmetric(eng, dim);
    const SymMatrix b = a + random_psd(eng, dim);
    const auto la = eigen_decompose(a).eigenvalues;
    const auto lb = eigen_decompose(b).eigenvalues;
    std::ostringstream tag;
    tag << "trial " << t;
    for (int i = 0; i < dim; ++i)
      monotone.record(la[static_cast<std::size_t>(i)] - lb[static_cast<std::size_t>(i)],
                      tag.str());

    const SymMatrix c = random_symmetric(eng, dim);
    const auto lc = eigen_decompose(c).eigenvalues;
    double gap = 0.0;
    for (int i = 0; i < dim; ++i)
      gap = std::max(gap, std::abs(la[static_cast<std::size_t>(i)] -
                                   lc[static_cast<std::size_t>(i)]));
    perturb.record(gap - operator_norm(a - c), tag.str());
  }
  return report;
}

// Order preservation of A -> A^p on PSD pairs, p in (0,1).
inline PropertyReport check_loewner_heinz(int dim, double p, int trials, std::uint64_t seed,
                                          double tol = 1e-8) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("loewner-heinz suite: exponent must lie in (0,1)");
  PropertyReport report;
  report.suite = "loewner-heinz";
  report.trials = trials;
  report.seed = seed;
  auto& order = report.check("power_preserves_order", tol);

  for (int t = 0; t < trials; ++t) {
    auto eng = trial_engine(seed ^ 0x10e5ULL, static_cast<std::uint64_t>(t));
    const SymMatrix a = random_psd(eng, dim);
    const SymMatrix b = a + random_psd(eng, dim);
    const SymMatrix ap = matrix_power(a, p);
    const SymMatrix bp = matrix_power(b, p);
    std::ostringstream tag;
    tag << "trial " << t << ", p=" << p;
    order.record(-lambda_min(bp - ap), tag.str());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Positive-part operator on vectors: Phi(x) = A x^+ for entrywise A >= 0
// ---------------------------------------------------------------------------

using DenseMatrix = std::vector<std::vector<double>>;  // row-major, possibly rectangular

inline std::vector<double> positive_part_image(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& row : a) {
    if (row.size() != x.size()) throw structural_error("positive part: shape mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * std::max(x[j], 0.0);
    out.push_back(s);
  }
  return out;
}

// Subgradient of x -> A x^+ at x0: T = A diag(s) with s_i = [x0_i > 0].
// The choice s_i = 0 at x0_i = 0 keeps T deterministic; any s_i in [0,1]
// would do there. T is entrywise nonnegative, exact at x0, and dominated by
// Phi everywhere.
inline DenseMatrix positive_part_subgradient(const DenseMatrix& a, const std::vector<double>& x0) {
  for (const auto& row : a) {
    if (row.size() != x0.size()) throw structural_error("positive part: shape mismatch");
    for (double v : row)
      if (v < 0.0) throw domain_error("positive part: matrix must be entrywise nonnegative");
  }
  DenseMatrix t = a;
  for (auto& row : t)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!(x0[j] > 0.0)) row[j] = 0.0;
  return t;
}

inline std::vector<double> dense_apply(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& row : a) {
    if (row.size() != x.size()) throw structural_error("matrix apply: shape mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace isotone
