#pragma once

// Error taxonomy shared by the whole kit.
//
//   structural_error  - malformed containers: wrong lengths, missing pieces
//   domain_error      - values outside an operation's admissible range
//   capability_error  - input is well formed but beyond a hard size bound
//   numerical_error   - an iteration failed to converge or lost feasibility

#include <stdexcept>
#include <string>

namespace isotone {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct structural_error : error {
  using error::error;
};

struct domain_error : error {
  using error::error;
};

struct capability_error : error {
  using error::error;
};

struct numerical_error : error {
  using error::error;
};

}  // namespace isotone
