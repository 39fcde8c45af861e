#pragma once

// Test-only reference values built straight from the written-out evolved
// states, independent of the propagators under test.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cavity_swap/protocol.hpp"

namespace oracle {

using cavity_swap::Amplitudes;
using cavity_swap::Complex;
using cavity_swap::StateVector;

/// Joint index on (atom1, atom2, cavity3, cavity4) with dims (2, 2, d, d);
/// atom levels g=0, e=1.
inline std::size_t idx(std::size_t s1, std::size_t s2, std::size_t n3, std::size_t n4, std::size_t d = 3) {
  return ((s1 * 2 + s2) * d + n3) * d + n4;
}

/// Four-party state after Clare's interaction, term by term:
///   a^2 |e>1|1>4 [cos(sqrt2 gt)|e,1> - i sin(sqrt2 gt)|g,2>]
/// + ab  |e>1|0>4 [cos(gt)|e,0> - i sin(gt)|g,1>]
/// + ab  |g>1|1>4 [cos(gt)|g,1> - i sin(gt)|e,0>]
/// + b^2 |g>1|0>4 |g,0>
inline StateVector evolved_state(double a, double b, double gt) {
  const Complex i{0.0, 1.0};
  const double r2 = std::sqrt(2.0);
  Amplitudes amps(36);
  amps[idx(1, 1, 1, 1)] += a * a * std::cos(r2 * gt);
  amps[idx(1, 0, 2, 1)] += -i * a * a * std::sin(r2 * gt);
  amps[idx(1, 1, 0, 0)] += a * b * std::cos(gt);
  amps[idx(1, 0, 1, 0)] += -i * a * b * std::sin(gt);
  amps[idx(0, 0, 1, 1)] += a * b * std::cos(gt);
  amps[idx(0, 1, 0, 1)] += -i * a * b * std::sin(gt);
  amps[idx(0, 0, 0, 0)] += b * b;
  return StateVector(cavity_swap::protocol_layout(), std::move(amps));
}

inline double max_deviation(const StateVector& x, const StateVector& y) {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.dimension(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

}  // namespace oracle
