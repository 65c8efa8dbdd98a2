#pragma once

// Real symmetric matrices, the cyclic Jacobi eigensolver, and the order
// queries built on it (Loewner comparison, spectral powers, operator norm).
// Jacobi was chosen over an external solver: it is self-contained, exactly
// symmetric, and deterministic for a fixed input, which the seeded property
// suites rely on.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isotone/errors.hpp"

namespace isotone {

class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw structural_error("sym matrix: dimension must be positive");
  }

  SymMatrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw structural_error("sym matrix: dimension must be positive");
    if (a_.size() != static_cast<std::size_t>(n) * n)
      throw structural_error("sym matrix: entry count does not match dimension");
    check_symmetry();
  }

  static SymMatrix identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  static SymMatrix diagonal(const std::vector<double>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
    return m;
  }

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw structural_error("sym matrix: no rows");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n)
        throw structural_error("sym matrix: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return SymMatrix(n, std::move(flat));
  }

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, double v) { a_[idx(i, j)] = v; a_[idx(j, i)] = v; }
  const std::vector<double>& entries() const { return a_; }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  SymMatrix operator+(const SymMatrix& o) const { return combined(o, 1.0); }
  SymMatrix operator-(const SymMatrix& o) const { return combined(o, -1.0); }

  SymMatrix scaled(double c) const {
    SymMatrix r = *this;
    for (double& v : r.a_) v *= c;
    return r;
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw structural_error("sym matrix: vector length mismatch");
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += a_[idx(i, j)] * x[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s;
    }
    return y;
  }

  // Trace pairing <A, B> = sum_ij a_ij b_ij.
  double inner(const SymMatrix& o) const {
    require_same_dim(o);
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * o.a_[k];
    return s;
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += a_[idx(i, i)];
    return s;
  }

  // A*B symmetrized; exact when A and B commute (e.g. B = A).
  SymMatrix product_sym(const SymMatrix& o) const {
    require_same_dim(o);
    SymMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        double sij = 0.0, sji = 0.0;
        for (int k = 0; k < n_; ++k) {
          sij += a_[idx(i, k)] * o.a_[idx(k, j)];
          sji += a_[idx(j, k)] * o.a_[idx(k, i)];
        }
        r.set(i, j, 0.5 * (sij + sji));
      }
    return r;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  void require_same_dim(const SymMatrix& o) const {
    if (o.n_ != n_) throw structural_error("sym matrix: dimension mismatch");
  }

  void check_symmetry() const {
    const double tol = 1e-12 * std::max(1.0, frobenius_norm());
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (std::abs(a_[idx(i, j)] - a_[idx(j, i)]) > tol)
          throw domain_error("sym matrix: entries (" + std::to_string(i) + "," +
                             std::to_string(j) + ") break symmetry");
  }

  SymMatrix combined(const SymMatrix& o, double sign) const {
    require_same_dim(o);
    SymMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += sign * o.a_[k];
    return r;
  }

  int n_ = 0;
  std::vector<double> a_;
};

// Eigenvalues in nonincreasing order with matching orthonormal eigenvectors.
struct EigenSystem {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // eigenvectors[k][i]

  SymMatrix reconstruct() const {
    const int n = static_cast<int>(eigenvalues.size());
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          s += eigenvalues[static_cast<std::size_t>(k)] *
               eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
               eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        a.set(i, j, s);
      }
    return a;
  }
};

// Cyclic-by-row Jacobi. Stops when the off-diagonal Frobenius mass falls
// under 1e-13 * ||A||_F; refuses after 100 sweeps.
inline EigenSystem eigen_decompose(const SymMatrix& input) {
  const int n = input.dim();
  const double scale = input.frobenius_norm();
  const double stop = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;

  std::vector<double> a(input.entries());
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i) at(v, i, i) = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * at(a, i, j) * at(a, i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= stop) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (std::abs(apq) <= stop / (static_cast<double>(n) * n)) continue;
        const double tau = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          const double aip = at(a, i, p);
          const double aiq = at(a, i, q);
          at(a, i, p) = c * aip - s * aiq;
          at(a, i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(a, p, i);
          const double aqi = at(a, q, i);
          at(a, p, i) = c * api - s * aqi;
          at(a, q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = at(v, i, p);
          const double viq = at(v, i, q);
          at(v, i, p) = c * vip - s * viq;
          at(v, i, q) = s * vip + c * viq;
        }
      }
  }
  if (sweep == kMaxSweeps && off_norm() > stop)
    throw numerical_error("jacobi: no convergence after 100 sweeps");

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return at(a, x, x) > at(a, y, y); });

  EigenSystem es;
  es.eigenvalues.reserve(static_cast<std::size_t>(n));
  es.eigenvectors.reserve(static_cast<std::size_t>(n));
  for (int k : order) {
    es.eigenvalues.push_back(at(a, k, k));
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = at(v, i, k);
    // deterministic sign: largest-magnitude component made positive
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(col[static_cast<std::size_t>(i)]) >
          std::abs(col[static_cast<std::size_t>(arg)]))
        arg = i;
    if (col[static_cast<std::size_t>(arg)] < 0.0)
      for (double& x : col) x = -x;
    es.eigenvectors.push_back(std::move(col));
  }
  return es;
}

inline double lambda_max(const SymMatrix& a) { return eigen_decompose(a).eigenvalues.front(); }
inline double lambda_min(const SymMatrix& a) { return eigen_decompose(a).eigenvalues.back(); }

inline double operator_norm(const SymMatrix& a) {
  const EigenSystem es = eigen_decompose(a);
  return std::max(std::abs(es.eigenvalues.front()), std::abs(es.eigenvalues.back()));
}

// Loewner order: A <= B iff B - A is positive semidefinite up to tol.
inline bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw structural_error("loewner: dimension mismatch");
  return lambda_min(b - a) >= -tol;
}

// Spectral power A^p for p in (0,1]. Eigenvalues within the PSD tolerance of
// zero are clamped to zero; genuinely negative spectrum is refused.
inline SymMatrix matrix_power(const SymMatrix& a, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw domain_error("matrix power: exponent must lie in (0,1], got " + std::to_string(p));
  EigenSystem es = eigen_decompose(a);
  const double tol = 1e-10 * std::max(1.0, a.frobenius_norm());
  for (double& lam : es.eigenvalues) {
    if (lam < -tol)
      throw domain_error("matrix power: spectrum reaches " + std::to_string(lam) +
                         ", matrix is not positive semidefinite");
    lam = (lam <= 0.0) ? 0.0 : std::pow(lam, p);
  }
  return es.reconstruct();
}

// ---------------------------------------------------------------------------
// Random instances for the property suites
// ---------------------------------------------------------------------------

inline SymMatrix random_symmetric(std::mt19937_64& eng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, dist(eng));
  return m;
}

inline SymMatrix random_psd(std::mt19937_64& eng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> g(static_cast<std::size_t>(n) * n);
  for (double& x : g) x = dist(eng);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += g[static_cast<std::size_t>(i) * n + k] * g[static_cast<std::size_t>(j) * n + k];
      m.set(i, j, s / n);
    }
  return m;
}

}  // namespace isotone
