#pragma once

// Isotonicity certification for max-affine convex vector maps. A map
// R^n -> R^m has components Phi_j(x) = max_k (a_jk . x + b_jk). Such a map
// is isotone exactly when every piece that is active somewhere has an
// entrywise nonnegative gradient: an active gradient is a subgradient, and
// order preservation forces subgradients to be positive. Activity regions
// are decided by one LP per piece, so the certificate is exact for this
// class, not sampled.
//
// Two modes: the whole space, and the positive cone (activity is then tested
// on the epsilon-interior x >= eps, whose isotonicity extends to the closed
// cone by continuity). Activity LPs are boxed at |x_i| <= 1e6 to guarantee
// bounded programs; pieces active only beyond the box are out of reach,
// which is the documented limit of the certifier.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/simplex.hpp"

namespace isotone {

struct AffinePiece {
  std::vector<double> gradient;
  double offset = 0.0;
};

struct MaxAffineMap {
  int input_dim = 0;
  std::vector<std::vector<AffinePiece>> components;

  void validate() const {
    if (input_dim < 1) throw structural_error("max-affine map: input dimension must be >= 1");
    if (components.empty()) throw structural_error("max-affine map: no components");
    for (std::size_t j = 0; j < components.size(); ++j) {
      if (components[j].empty())
        throw structural_error("max-affine map: component " + std::to_string(j) +
                               " has no pieces");
      for (const auto& p : components[j])
        if (static_cast<int>(p.gradient.size()) != input_dim)
          throw structural_error("max-affine map: gradient length mismatch in component " +
                                 std::to_string(j));
    }
  }

  double piece_value(int j, int k, const std::vector<double>& x) const {
    const AffinePiece& p = components[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    double s = p.offset;
    for (int i = 0; i < input_dim; ++i)
      s += p.gradient[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return s;
  }

  double evaluate_component(int j, const std::vector<double>& x) const {
    const auto& pieces = components[static_cast<std::size_t>(j)];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pieces.size(); ++k)
      best = std::max(best, piece_value(j, static_cast<int>(k), x));
    return best;
  }

  std::vector<double> evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != input_dim)
      throw structural_error("max-affine map: point dimension mismatch");
    std::vector<double> out;
    out.reserve(components.size());
    for (std::size_t j = 0; j < components.size(); ++j)
      out.push_back(evaluate_component(static_cast<int>(j), x));
    return out;
  }
};

struct CertifierConfig {
  double box_bound = 1e6;      // |x_i| cap inside activity programs
  double cone_epsilon = 1e-6;  // interior margin for cone-restricted activity
  double active_slack = 1e-9;  // pointwise active-set detection
  double feas_tol = 1e-9;      // LP feasibility threshold
  double gradient_tol = 1e-12; // entries below -gradient_tol count as negative
};

struct ActivityResult {
  bool ever_active = false;
  double max_slack = 0.0;          // optimal value of the activity program
  std::vector<double> witness;     // maximizer of the slack, when active
};

// Does piece k of component j attain the componentwise max anywhere (in the
// box, and above eps in cone mode)? Solved as  max delta  s.t.
// (a_k - a_l).x >= b_l - b_k + delta for all l != k, bounds on x.
inline ActivityResult piece_ever_active(const MaxAffineMap& map, int component, int piece,
                                        bool cone_restricted,
                                        const CertifierConfig& cfg = {}) {
  map.validate();
  if (component < 0 || component >= static_cast<int>(map.components.size()))
    throw structural_error("activity: component index out of range");
  const auto& pieces = map.components[static_cast<std::size_t>(component)];
  if (piece < 0 || piece >= static_cast<int>(pieces.size()))
    throw structural_error("activity: piece index out of range");

  const int n = map.input_dim;
  const double lo = cone_restricted ? cfg.cone_epsilon : -cfg.box_bound;
  const double hi = cfg.box_bound;

  if (pieces.size() == 1) {
    ActivityResult r;
    r.ever_active = true;
    r.max_slack = std::numeric_limits<double>::infinity();
    r.witness.assign(static_cast<std::size_t>(n), cone_restricted ? 1.0 : 0.0);
    return r;
  }

  // columns: y_0..y_{n-1} (shifted so x = y + lo), dplus, dminus,
  // one surplus per rival piece, one box slack per coordinate
  const int rivals = static_cast<int>(pieces.size()) - 1;
  const int cols = n + 2 + rivals + n;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  const auto& ak = pieces[static_cast<std::size_t>(piece)];

  int rival_idx = 0;
  for (int l = 0; l < static_cast<int>(pieces.size()); ++l) {
    if (l == piece) continue;
    const auto& al = pieces[static_cast<std::size_t>(l)];
    std::vector<double> row(static_cast<std::size_t>(cols), 0.0);
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = ak.gradient[static_cast<std::size_t>(i)] -
                       al.gradient[static_cast<std::size_t>(i)];
      row[static_cast<std::size_t>(i)] = d;
      shift += d * lo;
    }
    row[static_cast<std::size_t>(n)] = -1.0;      // dplus
    row[static_cast<std::size_t>(n + 1)] = 1.0;   // dminus
    row[static_cast<std::size_t>(n + 2 + rival_idx)] = -1.0;
    rows.push_back(std::move(row));
    rhs.push_back(al.offset - ak.offset - shift);
    ++rival_idx;
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(cols), 0.0);
    row[static_cast<std::size_t>(i)] = 1.0;
    row[static_cast<std::size_t>(n + 2 + rivals + i)] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(hi - lo);
  }

  std::vector<double> cost(static_cast<std::size_t>(cols), 0.0);
  cost[static_cast<std::size_t>(n)] = -1.0;     // maximize delta
  cost[static_cast<std::size_t>(n + 1)] = 1.0;

  const LpSolution sol = simplex_solve(rows, rhs, cost, cfg.feas_tol);
  if (sol.status != LpStatus::Optimal)
    throw numerical_error("activity: boxed program did not solve");

  ActivityResult r;
  r.max_slack = sol.x[static_cast<std::size_t>(n)] - sol.x[static_cast<std::size_t>(n + 1)];
  r.ever_active = r.max_slack >= -cfg.feas_tol;
  if (r.ever_active) {
    r.witness.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      r.witness[static_cast<std::size_t>(i)] = sol.x[static_cast<std::size_t>(i)] + lo;
  }
  return r;
}

struct PieceStatus {
  int component = 0;
  int piece = 0;
  bool ever_active = false;
  bool gradient_nonnegative = true;
};

struct ViolationWitness {
  std::vector<double> x;
  std::vector<double> y;  // x <= y componentwise
  int component = 0;
  double value_at_x = 0.0;
  double value_at_y = 0.0;  // strictly below value_at_x
};

struct IsotonicityVerdict {
  bool certified = false;
  std::vector<PieceStatus> certificate;      // populated when certified
  std::optional<ViolationWitness> witness;   // populated when violated
};

namespace detail {

// Step off an active negative-gradient piece along one coordinate. The step
// size keeps every rival's slack at least half intact, so the component
// value strictly drops while the point moves up.
inline std::optional<ViolationWitness> build_violation(const MaxAffineMap& map, int component,
                                                       int piece,
                                                       const std::vector<double>& x,
                                                       const CertifierConfig& cfg) {
  const auto& pieces = map.components[static_cast<std::size_t>(component)];
  const auto& ak = pieces[static_cast<std::size_t>(piece)];
  const int n = map.input_dim;
  const double vk = map.piece_value(component, piece, x);

  for (int i = 0; i < n; ++i) {
    const double gki = ak.gradient[static_cast<std::size_t>(i)];
    if (gki >= -cfg.gradient_tol) continue;
    double cap = std::numeric_limits<double>::infinity();
    for (int l = 0; l < static_cast<int>(pieces.size()); ++l) {
      if (l == piece) continue;
      const double gli = pieces[static_cast<std::size_t>(l)].gradient[static_cast<std::size_t>(i)];
      if (gli <= 0.0) continue;
      const double slack = vk - map.piece_value(component, l, x);
      cap = std::min(cap, std::max(slack, 0.0) / (2.0 * gli));
    }
    double step = std::isfinite(cap) ? cap : std::max(1.0, 2e-9 / -gki);
    step = std::min(step, 1e6);
    if (step <= 0.0) continue;

    std::vector<double> y = x;
    y[static_cast<std::size_t>(i)] += step;
    const double vx = map.evaluate_component(component, x);
    const double vy = map.evaluate_component(component, y);
    if (vx - vy > 1e-9) {
      ViolationWitness w;
      w.x = x;
      w.y = std::move(y);
      w.component = component;
      w.value_at_x = vx;
      w.value_at_y = vy;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Certified iff every ever-active piece has a nonnegative gradient. A
// violation returns a concrete monotone pair x <= y with a strictly
// decreasing component value, re-evaluated before it is returned.
inline IsotonicityVerdict certify_isotone(const MaxAffineMap& map, bool cone_restricted,
                                          const CertifierConfig& cfg = {}) {
  map.validate();
  IsotonicityVerdict verdict;
  std::vector<PieceStatus> statuses;
  bool any_flagged = false;

  for (int j = 0; j < static_cast<int>(map.components.size()); ++j) {
    const auto& pieces = map.components[static_cast<std::size_t>(j)];
    for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
      PieceStatus st;
      st.component = j;
      st.piece = k;
      const auto& grad = pieces[static_cast<std::size_t>(k)].gradient;
      for (double g : grad)
        if (g < -cfg.gradient_tol) {
          st.gradient_nonnegative = false;
          break;
        }
      const ActivityResult act = piece_ever_active(map, j, k, cone_restricted, cfg);
      st.ever_active = act.ever_active;
      statuses.push_back(st);

      if (st.ever_active && !st.gradient_nonnegative) {
        any_flagged = true;
        auto w = detail::build_violation(map, j, k, act.witness, cfg);
        if (w) {
          verdict.certified = false;
          verdict.witness = std::move(w);
          return verdict;
        }
      }
    }
  }

  if (any_flagged)
    throw numerical_error(
        "certify: an active piece carries a negative gradient but no validated "
        "violation pair was constructed");
  verdict.certified = true;
  verdict.certificate = std::move(statuses);
  return verdict;
}

struct SubgradientResult {
  bool success = false;
  std::vector<std::vector<double>> rows;  // per-component positive subgradients
  std::vector<std::vector<double>> active_weights;  // convex weights used per component
  int failed_component = -1;
};

// Positive subgradient at a single point: per component, a convex
// combination of the gradients active at x0 that lands in the nonnegative
// orthant, found by the feasibility LP. Fails with the first component whose
// active hull misses the orthant.
inline SubgradientResult pointwise_positive_subgradient(const MaxAffineMap& map,
                                                        const std::vector<double>& x0,
                                                        const CertifierConfig& cfg = {}) {
  map.validate();
  if (static_cast<int>(x0.size()) != map.input_dim)
    throw structural_error("subgradient: point dimension mismatch");

  SubgradientResult result;
  for (int j = 0; j < static_cast<int>(map.components.size()); ++j) {
    const auto& pieces = map.components[static_cast<std::size_t>(j)];
    double maxv = -std::numeric_limits<double>::infinity();
    std::vector<double> vals(pieces.size());
    for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
      vals[static_cast<std::size_t>(k)] = map.piece_value(j, k, x0);
      maxv = std::max(maxv, vals[static_cast<std::size_t>(k)]);
    }
    const double tol = cfg.active_slack * std::max(1.0, std::abs(maxv));
    std::vector<std::vector<double>> active;
    for (int k = 0; k < static_cast<int>(pieces.size()); ++k)
      if (maxv - vals[static_cast<std::size_t>(k)] <= tol)
        active.push_back(pieces[static_cast<std::size_t>(k)].gradient);

    const PositiveCombination combo = lp_feasible_positive_combination(active, cfg.feas_tol);
    if (!combo.feasible) {
      result.success = false;
      result.failed_component = j;
      return result;
    }
    result.rows.push_back(combo.combination);
    result.active_weights.push_back(combo.weights);
  }
  result.success = true;
  return result;
}

}  // namespace isotone
