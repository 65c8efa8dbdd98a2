#pragma once

// Capacities on finite ground sets: normalized monotone set functions that
// need not be additive. A capacity on n elements stores all 2^n values,
// indexed by subset bitmask with bit i = element i (LSB = element 0). The
// bitmask encoding is part of the on-disk format and must not change.
//
// Distorted probabilities u(P(S)) for a nondecreasing concave distortion u
// are the stock construction of submodular capacities; DistortionFn carries
// the three supported shapes of u (power, piecewise-linear, table).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isotone/errors.hpp"

namespace isotone {

inline constexpr int kMaxGroundSet = 20;       // 2^20 doubles = 8 MB of values
inline constexpr int kMaxExhaustivePairs = 14; // 4^14 subset pairs is the scan budget
inline constexpr double kCapacityTol = 1e-12;

// Nondecreasing concave distortion u : [0,1] -> [0,1] with u(0)=0, u(1)=1.
// Construction validates the shape constraints on a fixed grid and throws
// domain_error on violation, so an instance is always usable as-is.
class DistortionFn {
 public:
  enum class Kind { Power, PiecewiseLinear, Table };

  static DistortionFn power(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
      throw domain_error("distortion: power exponent must lie in (0,1], got " +
                         std::to_string(alpha));
    DistortionFn u;
    u.kind_ = Kind::Power;
    u.alpha_ = alpha;
    u.validate_grid();
    return u;
  }

  static DistortionFn identity() { return power(1.0); }

  // Knots are (t, u(t)) pairs; t strictly increasing from 0 to 1.
  static DistortionFn piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw structural_error("distortion: need at least two knots");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (!(knots[i - 1].first < knots[i].first))
        throw structural_error("distortion: knot abscissas must be strictly increasing");
    DistortionFn u;
    u.kind_ = Kind::PiecewiseLinear;
    u.knots_ = std::move(knots);
    u.check_endpoints(u.knots_.front().first, u.knots_.front().second,
                      u.knots_.back().first, u.knots_.back().second);
    u.validate_grid();
    return u;
  }

  // Values on the uniform grid t_i = i/(m-1), linearly interpolated.
  static DistortionFn table(std::vector<double> grid_values) {
    if (grid_values.size() < 2) throw structural_error("distortion: table needs >= 2 values");
    DistortionFn u;
    u.kind_ = Kind::Table;
    u.table_ = std::move(grid_values);
    u.check_endpoints(0.0, u.table_.front(), 1.0, u.table_.back());
    u.validate_grid();
    return u;
  }

  double operator()(double t) const {
    t = std::clamp(t, 0.0, 1.0);  // subset sums carry roundoff of a few ulp
    switch (kind_) {
      case Kind::Power:
        return std::pow(t, alpha_);
      case Kind::PiecewiseLinear: {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const auto& k) { return v < k.first; });
        if (it == knots_.begin()) return knots_.front().second;
        if (it == knots_.end()) return knots_.back().second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
      }
      case Kind::Table: {
        const double pos = t * static_cast<double>(table_.size() - 1);
        const auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= table_.size()) return table_.back();
        const double w = pos - static_cast<double>(i);
        return table_[i] + w * (table_[i + 1] - table_[i]);
      }
    }
    return 0.0;  // unreachable
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  const std::vector<double>& table_values() const { return table_; }

 private:
  DistortionFn() = default;

  void check_endpoints(double t0, double v0, double t1, double v1) const {
    if (std::abs(t0) > kCapacityTol || std::abs(v0) > kCapacityTol)
      throw domain_error("distortion: u(0) must be 0");
    if (std::abs(t1 - 1.0) > kCapacityTol || std::abs(v1 - 1.0) > kCapacityTol)
      throw domain_error("distortion: u(1) must be 1");
  }

  // Monotonicity and midpoint concavity are checked on the half-steps of a
  // 1001-point grid: u((s+t)/2) >= (u(s)+u(t))/2 - tol for all grid s,t.
  void validate_grid() const {
    constexpr int kGrid = 1000;
    std::vector<double> u2(2 * kGrid + 1);
    for (int k = 0; k <= 2 * kGrid; ++k)
      u2[static_cast<std::size_t>(k)] = (*this)(static_cast<double>(k) / (2.0 * kGrid));
    for (int k = 1; k <= 2 * kGrid; ++k)
      if (u2[static_cast<std::size_t>(k)] < u2[static_cast<std::size_t>(k - 1)] - kCapacityTol)
        throw domain_error("distortion: not nondecreasing near t=" +
                           std::to_string(k / (2.0 * kGrid)));
    for (int i = 0; i <= kGrid; ++i)
      for (int j = i; j <= kGrid; ++j) {
        const double mid = u2[static_cast<std::size_t>(i + j)];
        const double avg = 0.5 * (u2[static_cast<std::size_t>(2 * i)] +
                                  u2[static_cast<std::size_t>(2 * j)]);
        if (mid < avg - kCapacityTol)
          throw domain_error("distortion: not midpoint-concave between t=" +
                             std::to_string(i / static_cast<double>(kGrid)) + " and t=" +
                             std::to_string(j / static_cast<double>(kGrid)));
      }
  }

  Kind kind_ = Kind::Power;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
  std::vector<double> table_;
};

// Normalized monotone set function on subsets of {0,...,n-1}.
struct Capacity {
  int n = 0;
  std::vector<double> values;  // size 2^n, index = subset bitmask

  Capacity() = default;
  Capacity(int n_, std::vector<double> values_) : n(n_), values(std::move(values_)) {
    if (n < 1 || n > kMaxGroundSet)
      throw structural_error("capacity: ground set size must lie in [1," +
                             std::to_string(kMaxGroundSet) + "], got " + std::to_string(n));
    if (values.size() != (std::size_t{1} << n))
      throw structural_error("capacity: expected " + std::to_string(std::size_t{1} << n) +
                             " values for n=" + std::to_string(n) + ", got " +
                             std::to_string(values.size()));
  }

  std::uint32_t full_mask() const { return (1u << n) - 1u; }
  double at(std::uint32_t mask) const { return values[mask]; }
};

inline std::string subset_to_string(std::uint32_t mask, int n) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) {
      if (!first) os << ',';
      os << i;
      first = false;
    }
  os << '}';
  return os.str();
}

struct CapacityValidation {
  bool empty_ok = true;     // mu(empty) = 0
  bool full_ok = true;      // mu(ground set) = 1
  bool monotone_ok = true;  // A subset of B implies mu(A) <= mu(B)
  std::uint32_t offending_subset = 0;    // valid when !monotone_ok
  std::uint32_t offending_superset = 0;  // differs by one element

  bool pass() const { return empty_ok && full_ok && monotone_ok; }

  std::string describe(int n) const {
    if (pass()) return "pass";
    std::ostringstream os;
    if (!empty_ok) os << "mu(empty) != 0; ";
    if (!full_ok) os << "mu(ground set) != 1; ";
    if (!monotone_ok)
      os << "monotonicity fails for " << subset_to_string(offending_subset, n)
         << " vs " << subset_to_string(offending_superset, n);
    return os.str();
  }
};

// Normalization and monotonicity report. Monotonicity is checked on all
// (S, S + one element) pairs, which suffices by transitivity and keeps the
// scan at O(n 2^n) instead of all subset pairs.
inline CapacityValidation validate_capacity(const Capacity& c) {
  if (c.n < 1 || c.n > kMaxGroundSet)
    throw structural_error("capacity: ground set size out of range");
  const std::size_t want = std::size_t{1} << c.n;
  if (c.values.size() != want)
    throw structural_error("capacity: " + std::to_string(c.values.size()) +
                           " values, expected " + std::to_string(want));

  CapacityValidation report;
  report.empty_ok = std::abs(c.values[0]) <= kCapacityTol;
  report.full_ok = std::abs(c.values[c.full_mask()] - 1.0) <= kCapacityTol;
  for (std::uint32_t s = 0; s <= c.full_mask() && report.monotone_ok; ++s)
    for (int i = 0; i < c.n; ++i) {
      if (s & (1u << i)) continue;
      const std::uint32_t t = s | (1u << i);
      if (c.values[s] > c.values[t] + kCapacityTol) {
        report.monotone_ok = false;
        report.offending_subset = s;
        report.offending_superset = t;
        break;
      }
    }
  return report;
}

struct SubmodularityResult {
  bool submodular = true;
  std::uint32_t set_a = 0;  // first violating pair when !submodular
  std::uint32_t set_b = 0;
};

// Exhaustive scan of mu(A|B) + mu(A&B) <= mu(A) + mu(B) over unordered
// subset pairs. 4^n checks, refused above n = 14.
inline SubmodularityResult is_submodular(const Capacity& c) {
  if (c.n > kMaxExhaustivePairs)
    throw capability_error("submodularity scan needs 4^n checks; n=" + std::to_string(c.n) +
                           " exceeds the exhaustive bound " +
                           std::to_string(kMaxExhaustivePairs));
  const CapacityValidation v = validate_capacity(c);
  if (!v.pass()) throw domain_error("submodularity scan on invalid capacity: " + v.describe(c.n));

  const std::uint32_t full = c.full_mask();
  for (std::uint32_t a = 0; a <= full; ++a) {
    const double va = c.values[a];
    for (std::uint32_t b = a; b <= full; ++b) {
      const double lhs = c.values[a | b] + c.values[a & b];
      if (lhs > va + c.values[b] + kCapacityTol)
        return {false, a, b};
    }
  }
  return {true, 0, 0};
}

// Distorted probability: values[S] = u(sum of weights over S). Subset sums
// are peeled off the lowest bit, which keeps floating-point sums monotone
// along the subset lattice.
inline Capacity distort(const std::vector<double>& weights, const DistortionFn& u) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxGroundSet)
    throw structural_error("distort: weight count must lie in [1," +
                           std::to_string(kMaxGroundSet) + "]");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw domain_error("distort: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kCapacityTol)
    throw domain_error("distort: weights sum to " + std::to_string(total) + ", expected 1");

  const std::size_t count = std::size_t{1} << n;
  std::vector<double> sums(count, 0.0);
  for (std::uint32_t s = 1; s < count; ++s) {
    const int low = std::countr_zero(s);
    sums[s] = sums[s & (s - 1)] + weights[static_cast<std::size_t>(low)];
  }
  std::vector<double> vals(count);
  vals[0] = 0.0;
  for (std::uint32_t s = 1; s < count; ++s) vals[s] = u(sums[s]);
  vals[count - 1] = 1.0;  // u(1) = 1; pin against roundoff in the total
  return Capacity(n, std::move(vals));
}

}  // namespace isotone
