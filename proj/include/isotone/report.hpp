#pragma once

// Shared result type for the randomized property suites. A report holds one
// named check per inequality; a check fails once its worst violation exceeds
// the suite tolerance, and keeps a short witness string for the first
// offender.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace isotone {

struct PropertyCheck {
  std::string name;
  bool pass = true;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::string witness;  // first offending instance, empty if none

  void record(double violation, const std::string& instance) {
    if (violation > max_violation) max_violation = violation;
    if (violation > tolerance && pass) {
      pass = false;
      witness = instance;
    }
  }
};

struct PropertyReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyCheck> checks;

  PropertyCheck& check(const std::string& name, double tolerance) {
    for (auto& c : checks)
      if (c.name == name) return c;
    checks.push_back(PropertyCheck{name, true, 0.0, tolerance, {}});
    return checks.back();
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  double worst_violation() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.max_violation);
    return w;
  }
};

}  // namespace isotone
