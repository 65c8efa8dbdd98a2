#pragma once

// Choquet integration of discrete functions against a Capacity, plus the
// randomized suites for the integral's axioms (positivity, monotonicity,
// homogeneity, calibration, translation invariance, comonotonic additivity)
// and the submodular consequences (subadditivity, modulus bounds).
//
// The integral of f over a subset A splits at zero:
//
//   int_0^inf mu({f >= t} & A) dt + int_{-inf}^0 [mu({f >= t} & A) - mu(A)] dt
//
// Both integrands are step functions of t whose breakpoints are the distinct
// values of f on A, so the sums below are exact up to roundoff.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "isotone/capacity.hpp"
#include "isotone/errors.hpp"
#include "isotone/random.hpp"
#include "isotone/report.hpp"

namespace isotone {

using DiscreteFunction = std::vector<double>;

inline void require_finite(const DiscreteFunction& f, const char* what) {
  for (double v : f)
    if (!std::isfinite(v)) throw domain_error(std::string(what) + ": entries must be finite");
}

// Survival profile of f on A: ascending distinct thresholds t_j together
// with mu({f >= t_j} & A). survival is nonincreasing and starts at mu(A).
struct LevelBreakdown {
  std::vector<double> thresholds;
  std::vector<double> survival;
  double set_mass = 0.0;

  // Exact evaluation of the split integral over the step integrands.
  double integrate() const {
    const std::size_t k = thresholds.size();
    double result = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < k; ++j) {  // positive half: (prev, t_j] slabs
      if (thresholds[j] <= 0.0) continue;
      result += (thresholds[j] - prev) * survival[j];
      prev = thresholds[j];
    }
    for (std::size_t j = 0; j < k; ++j) {  // negative half: (t_j, t_{j+1} ^ 0]
      if (thresholds[j] >= 0.0) break;
      const double hi = (j + 1 < k) ? std::min(thresholds[j + 1], 0.0) : 0.0;
      const double surv_above = (j + 1 < k) ? survival[j + 1] : 0.0;
      result += (hi - thresholds[j]) * (surv_above - set_mass);
    }
    return result;
  }
};

inline LevelBreakdown level_breakdown(const DiscreteFunction& f, const Capacity& c,
                                      std::uint32_t set_mask) {
  if (f.size() != static_cast<std::size_t>(c.n))
    throw structural_error("choquet: function has " + std::to_string(f.size()) +
                           " entries, capacity ground set has " + std::to_string(c.n));
  if (set_mask > c.full_mask())
    throw structural_error("choquet: subset mask out of range");
  require_finite(f, "choquet");

  LevelBreakdown lb;
  lb.set_mass = c.at(set_mask);
  std::vector<int> elems;
  for (int i = 0; i < c.n; ++i)
    if (set_mask & (1u << i)) elems.push_back(i);
  if (elems.empty()) return lb;

  std::sort(elems.begin(), elems.end(),
            [&](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });

  // Walk values from the top, accumulating the suffix mask {f >= v}. Ties
  // are compressed into one threshold whose mask covers the whole group.
  std::uint32_t suffix = 0;
  std::vector<std::pair<double, std::uint32_t>> groups;  // descending values
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    const double v = f[static_cast<std::size_t>(*it)];
    suffix |= 1u << *it;
    if (!groups.empty() && groups.back().first == v)
      groups.back().second = suffix;
    else
      groups.emplace_back(v, suffix);
  }
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    lb.thresholds.push_back(it->first);
    lb.survival.push_back(c.at(it->second));
  }
  return lb;
}

// Choquet integral of f over the subset A. Empty A integrates to zero.
inline double choquet_discrete(const DiscreteFunction& f, const Capacity& c,
                               std::uint32_t set_mask) {
  return level_breakdown(f, c, set_mask).integrate();
}

struct ComonotonicityResult {
  bool comonotonic = true;
  int first = -1;   // witness pair when !comonotonic
  int second = -1;
};

// f and g are comonotonic on A when no pair of points orders them oppositely.
inline ComonotonicityResult are_comonotonic(const DiscreteFunction& f, const DiscreteFunction& g,
                                            std::uint32_t set_mask) {
  if (f.size() != g.size())
    throw structural_error("comonotonicity: functions differ in length");
  require_finite(f, "comonotonicity");
  require_finite(g, "comonotonicity");
  std::vector<int> elems;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (set_mask & (1u << i)) elems.push_back(static_cast<int>(i));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a + 1; b < elems.size(); ++b) {
      const auto i = static_cast<std::size_t>(elems[a]);
      const auto j = static_cast<std::size_t>(elems[b]);
      if ((f[i] - f[j]) * (g[i] - g[j]) < 0.0)
        return {false, elems[a], elems[b]};
    }
  return {true, -1, -1};
}

// Quadrature variant for distorted Lebesgue capacities on [a,b] inside [0,1].
// The m midpoint samples act as a discrete function whose symmetric capacity
// is mu_m(S) = u(|S| (b-a)/m). First-order error in (b-a)/m for Lipschitz f,
// plus the modulus of continuity of u; documented, not asserted.
template <class F>
double choquet_interval(F&& f, const DistortionFn& u, double a, double b, int samples) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    throw domain_error("choquet_interval: need 0 <= a < b <= 1");
  if (samples < 2) throw domain_error("choquet_interval: need at least 2 samples");

  const double width = b - a;
  const double cell = width / samples;
  std::vector<double> vals(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = a + (i + 0.5) * cell;
    const double v = f(t);
    if (!std::isfinite(v)) throw domain_error("choquet_interval: sampled value not finite");
    vals[static_cast<std::size_t>(i)] = v;
  }
  std::sort(vals.begin(), vals.end());

  LevelBreakdown lb;
  lb.set_mass = u(width);
  // Distinct ascending thresholds; survival counts samples >= threshold.
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i == 0 || vals[i] > vals[i - 1]) {
      lb.thresholds.push_back(vals[i]);
      lb.survival.push_back(u(static_cast<double>(vals.size() - i) * cell));
    }
  }
  return lb.integrate();
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trial_tag(int trial, std::uint32_t mask, int n) {
  std::ostringstream os;
  os << "trial " << trial << ", A=" << subset_to_string(mask, n);
  return os.str();
}

// Comonotonic pair sharing one ranking: both functions are nondecreasing
// rearrangements of sorted draws along the same random order of elements.
inline void comonotonic_pair(std::mt19937_64& eng, int n, DiscreteFunction& f,
                             DiscreteFunction& g) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), eng);
  auto u = uniform_vector(eng, n, -2.0, 2.0);
  auto w = uniform_vector(eng, n, -2.0, 2.0);
  std::sort(u.begin(), u.end());
  std::sort(w.begin(), w.end());
  f.assign(static_cast<std::size_t>(n), 0.0);
  g.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) {
    f[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = u[static_cast<std::size_t>(r)];
    g[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = w[static_cast<std::size_t>(r)];
  }
}

}  // namespace detail

// Axioms that hold for every capacity: positivity, monotonicity, positive
// homogeneity, calibration, translation invariance, comonotonic additivity.
inline PropertyReport check_remark2_properties(const Capacity& c, int trials,
                                               std::uint64_t seed, double tol = 1e-10) {
  const CapacityValidation v = validate_capacity(c);
  if (!v.pass()) throw domain_error("remark2 suite on invalid capacity: " + v.describe(c.n));

  PropertyReport report;
  report.suite = "choquet-axioms";
  report.trials = trials;
  report.seed = seed;
  auto& positivity = report.check("positivity", tol);
  auto& monotonicity = report.check("monotonicity", tol);
  auto& homogeneity = report.check("positive_homogeneity", tol);
  auto& calibration = report.check("calibration", tol);
  auto& translation = report.check("translation_invariance", tol);
  auto& comonotonic = report.check("comonotonic_additivity", tol);

  for (int t = 0; t < trials; ++t) {
    auto eng = trial_engine(seed, static_cast<std::uint64_t>(t));
    const std::uint32_t mask = (t % 4 == 0) ? c.full_mask() : random_nonempty_subset(eng, c.n);
    const std::string tag = detail::trial_tag(t, mask, c.n);

    auto f = uniform_vector(eng, c.n, -2.0, 2.0);

    DiscreteFunction fabsv(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fabsv[i] = std::abs(f[i]);
    positivity.record(-choquet_discrete(fabsv, c, mask), tag);

    auto bump = uniform_vector(eng, c.n, 0.0, 1.0);
    DiscreteFunction g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] + bump[i];
    monotonicity.record(choquet_discrete(f, c, mask) - choquet_discrete(g, c, mask), tag);

    const double a = (t == 0) ? 0.0 : std::uniform_real_distribution<double>(0.0, 3.0)(eng);
    DiscreteFunction af(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) af[i] = a * f[i];
    homogeneity.record(std::abs(choquet_discrete(af, c, mask) - a * choquet_discrete(f, c, mask)),
                       tag);

    const DiscreteFunction ones(f.size(), 1.0);
    calibration.record(std::abs(choquet_discrete(ones, c, mask) - c.at(mask)), tag);

    const double shift = std::uniform_real_distribution<double>(-1.5, 1.5)(eng);
    DiscreteFunction fs(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fs[i] = f[i] + shift;
    translation.record(std::abs(choquet_discrete(fs, c, mask) -
                                (choquet_discrete(f, c, mask) + shift * c.at(mask))),
                       tag);

    DiscreteFunction cf, cg;
    detail::comonotonic_pair(eng, c.n, cf, cg);
    DiscreteFunction sum(cf.size());
    for (std::size_t i = 0; i < cf.size(); ++i) sum[i] = cf[i] + cg[i];
    comonotonic.record(std::abs(choquet_discrete(sum, c, mask) -
                                (choquet_discrete(cf, c, mask) + choquet_discrete(cg, c, mask))),
                       tag);
  }
  return report;
}

// Inequalities that need submodularity. Callable without the precondition
// check so a deliberately broken capacity can demonstrate test power.
inline PropertyReport subadditivity_probes(const Capacity& c, int trials, std::uint64_t seed,
                                           double tol = 1e-10) {
  PropertyReport report;
  report.suite = "choquet-subadditivity";
  report.trials = trials;
  report.seed = seed;
  auto& subadd = report.check("subadditivity", tol);
  auto& modulus = report.check("modulus_bound", tol);
  auto& distance = report.check("difference_bound", tol);

  for (int t = 0; t < trials; ++t) {
    auto eng = trial_engine(seed ^ 0x5eedULL, static_cast<std::uint64_t>(t));
    const std::uint32_t mask = (t % 4 == 0) ? c.full_mask() : random_nonempty_subset(eng, c.n);
    const std::string tag = detail::trial_tag(t, mask, c.n);

    auto f = uniform_vector(eng, c.n, -2.0, 2.0);
    auto g = uniform_vector(eng, c.n, -2.0, 2.0);

    DiscreteFunction sum(f.size()), diff(f.size()), fa(f.size()), da(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      sum[i] = f[i] + g[i];
      diff[i] = f[i] - g[i];
      fa[i] = std::abs(f[i]);
      da[i] = std::abs(diff[i]);
    }
    const double intf = choquet_discrete(f, c, mask);
    const double intg = choquet_discrete(g, c, mask);
    subadd.record(choquet_discrete(sum, c, mask) - (intf + intg), tag);
    modulus.record(std::abs(intf) - choquet_discrete(fa, c, mask), tag);
    distance.record(std::abs(intf - intg) - choquet_discrete(da, c, mask), tag);
  }
  return report;
}

inline PropertyReport check_remark3_properties(const Capacity& c, int trials,
                                               std::uint64_t seed, double tol = 1e-10) {
  const SubmodularityResult sm = is_submodular(c);
  if (!sm.submodular)
    throw domain_error("subadditivity suite requires a submodular capacity; violated by A=" +
                       subset_to_string(sm.set_a, c.n) + ", B=" +
                       subset_to_string(sm.set_b, c.n));
  return subadditivity_probes(c, trials, seed, tol);
}

}  // namespace isotone
