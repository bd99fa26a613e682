#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ballspec::verify {

struct InvariantResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
};

struct Invariant {
  std::string name;
  double tolerance;
  bool quick;  // included in the fast subset
  std::function<double()> residual;
};

/// The registry of named identity checks drawn from every module.
const std::vector<Invariant>& registry();

/// Run all (or the quick subset). Residuals are compared against each
/// invariant's tolerance; exceptions convert to failures with residual inf.
std::vector<InvariantResult> run_invariants(bool quick_only);

}  // namespace ballspec::verify
