#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cavity_swap/dynamics.hpp"

namespace cavity_swap {

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

using Propagator = std::function<StateVector(const StateVector&, const JCInteraction&)>;

struct VerifyOptions {
  /// Replaces every per-check tolerance when set.
  std::optional<double> tolerance;
  std::size_t oracle_cases = 200;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Propagator checked against the matrix-exponential oracle.
  Propagator propagator = jc_propagate;
};

/// Oracle equivalence, closed-form vs simulation agreement, and the table of
/// published numbers. Never throws on a failed check; failures are reported.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace cavity_swap
