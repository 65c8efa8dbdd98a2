#pragma once

// Linear minorants of the Choquet functional that are tangent at a given
// nonnegative function h with distinct values. Sorting h in descending order
// and telescoping the capacity along the top-i sets yields a probability
// vector w with
//
//   sum_i w_i h(i)  =  (C) int h dmu      (tangency)
//   sum_i w_i f(i) <=  (C) int f dmu      (domination, submodular mu)
//
// which exhibits the positive linear operator dominated by the vector of
// Choquet integrals and exact at h.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "isotone/capacity.hpp"
#include "isotone/choquet.hpp"
#include "isotone/errors.hpp"
#include "isotone/random.hpp"

namespace isotone {

// Weight vector of the tangent functional at h. Requires h >= 0 with
// pairwise distinct values; at a tie the descending order is ambiguous and
// the construction is refused rather than canonicalized.
inline std::vector<double> tangent_weights(const Capacity& c, const std::vector<double>& h) {
  if (h.size() != static_cast<std::size_t>(c.n))
    throw structural_error("tangent: function length does not match ground set");
  require_finite(h, "tangent");
  for (double v : h)
    if (v < 0.0) throw domain_error("tangent: h must be nonnegative");

  std::vector<int> order(h.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return h[static_cast<std::size_t>(a)] > h[static_cast<std::size_t>(b)];
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (h[static_cast<std::size_t>(order[i - 1])] == h[static_cast<std::size_t>(order[i])])
      throw domain_error("tangent: h has tied values (" +
                         std::to_string(h[static_cast<std::size_t>(order[i])]) +
                         "); the tangent functional is not canonical at ties");

  std::vector<double> w(h.size(), 0.0);
  std::uint32_t top = 0;
  double prev_mass = 0.0;
  for (int idx : order) {
    top |= 1u << idx;
    const double mass = c.at(top);
    w[static_cast<std::size_t>(idx)] = mass - prev_mass;
    prev_mass = mass;
  }
  return w;
}

struct TangentCheck {
  std::vector<double> weights;
  double tangency_gap = 0.0;        // |T(h) - (C)int h|
  double domination_violation = 0;  // max over probes of T(f) - (C)int f
  double weight_sum = 0.0;
  double min_weight = 0.0;
  bool pass = false;
};

struct Theorem7Report {
  std::vector<TangentCheck> per_capacity;
  int probes = 0;
  std::uint64_t seed = 0;
  bool all_pass() const {
    for (const auto& c : per_capacity)
      if (!c.pass) return false;
    return !per_capacity.empty();
  }
};

// For each coordinate capacity: build the tangent functional at h, verify
// tangency and domination on seeded nonnegative probes, and report the
// weight vector. Capacities must be submodular (checked by the caller or
// here when n allows the exhaustive scan).
inline Theorem7Report choquet_tangent_demo(const std::vector<Capacity>& capacities,
                                           const std::vector<double>& h, int probes,
                                           std::uint64_t seed, double tangency_tol = 1e-10,
                                           double domination_tol = 1e-10,
                                           double weight_tol = 1e-12) {
  if (capacities.empty()) throw structural_error("tangent demo: no capacities given");
  Theorem7Report report;
  report.probes = probes;
  report.seed = seed;

  for (std::size_t ci = 0; ci < capacities.size(); ++ci) {
    const Capacity& c = capacities[ci];
    if (c.n <= kMaxExhaustivePairs) {
      const SubmodularityResult sm = is_submodular(c);
      if (!sm.submodular)
        throw domain_error("tangent demo: capacity " + std::to_string(ci) +
                           " is not submodular (A=" + subset_to_string(sm.set_a, c.n) +
                           ", B=" + subset_to_string(sm.set_b, c.n) + ")");
    }
    TangentCheck check;
    check.weights = tangent_weights(c, h);
    check.weight_sum = std::accumulate(check.weights.begin(), check.weights.end(), 0.0);
    check.min_weight = *std::min_element(check.weights.begin(), check.weights.end());

    const double ch = choquet_discrete(h, c, c.full_mask());
    double th = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) th += check.weights[i] * h[i];
    check.tangency_gap = std::abs(th - ch);

    for (int p = 0; p < probes; ++p) {
      auto eng = trial_engine(seed + ci, static_cast<std::uint64_t>(p));
      auto f = uniform_vector(eng, c.n, 0.0, 3.0);
      double tf = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) tf += check.weights[i] * f[i];
      const double cf = choquet_discrete(f, c, c.full_mask());
      check.domination_violation = std::max(check.domination_violation, tf - cf);
    }
    check.pass = check.tangency_gap <= tangency_tol &&
                 check.domination_violation <= domination_tol &&
                 check.min_weight >= -weight_tol &&
                 std::abs(check.weight_sum - 1.0) <= weight_tol;
    report.per_capacity.push_back(std::move(check));
  }
  return report;
}

}  // namespace isotone
