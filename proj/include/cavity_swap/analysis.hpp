#pragma once

#include <cstddef>
#include <vector>

#include "cavity_swap/protocol.hpp"

namespace cavity_swap {

// Closed forms. All assume real 0 < b < 1 and |b(1+k)| < 1 and throw
// InvalidParams otherwise. They describe the heralded branch at the
// gt = 7pi/4 branch phase; only the sqrt(2) manifold depends on `gt`.

/// F = b^2 / (b^2 + (1 - b^2) cos^2(sqrt2 gt)), atom-detection variant, k = 0.
double fidelity_formula_A(double b, double gt);
/// P_new = 1/2 [(1-b^2) b^2 (1+k)^2 + b^2 (1 - b^2 (1+k)^2)].
double pnew_formula(double b, double k);
/// F_new, the mismatched-coefficient fidelity of the atom-detection variant.
double fnew_formula(double b, double k, double gt);
/// Cavity-vacuum variant fidelity with mismatch:
///   1/2 (a b' + b a')^2 / (a^2 b'^2 + b^2 a'^2 + 2 b^2 b'^2),
/// which is 1 - b^2 at k = 0.
double fidelity_formula_B(double b, double k);

/// Inclusive grid start, start+step, ... up to stop (within 1e-9 step).
/// Throws InvalidParams for step <= 0 or stop < start.
std::vector<double> linear_range(double start, double stop, double step);

struct SweepSpec {
  Variant variant = Variant::MeasureAtom;
  Encoding encoding = Encoding::SameExcitation;
  std::vector<double> b_values;
  std::vector<double> k_values{0.0};
  std::vector<double> gt_values{kMagicPhase};
  std::size_t cavity_truncation = kDefaultCavityDimension;
};

struct SweepRecord {
  double b = 0.0;
  double k = 0.0;
  double gt = 0.0;
  Variant variant = Variant::MeasureAtom;
  double outcome_probability = 0.0;
  double fidelity = 0.0;
  double useful_probability = 0.0;
  double fidelity_formula = 0.0;
  double probability_formula = 0.0;
  /// max(|fidelity - fidelity_formula|, |useful_probability - probability_formula|)
  double abs_deviation = 0.0;
};

/// Threads to use when the caller passes 0: CAVITY_SWAP_THREADS if set and
/// positive, otherwise the hardware concurrency.
std::size_t sweep_thread_count();

/// Runs the protocol at every (b, k, gt) grid point, b outermost and gt
/// innermost. Output order is the grid order regardless of `threads`.
std::vector<SweepRecord> sweep(const SweepSpec& spec, std::size_t threads = 0);

/// b-grid of the fidelity-vs-b figure: [0.05, 0.95] in steps of 0.01.
SweepSpec figure1_preset();

/// Smallest b in (lo, hi) where fidelity_formula_A crosses `threshold`,
/// by bisection. Assumes the formula is increasing on the bracket.
double fidelity_crossing(double threshold, double gt = kMagicPhase, double lo = 1e-6,
                         double hi = 1.0 - 1e-6);

struct TimingBudget {
  double g = 0.0;  // rad/s
  double radiative_time_s = 0.0;
  double cavity_decay_time_s = 0.0;
  double interaction_time_s = 0.0;
  double total_time_s = 0.0;
  bool feasible = false;
};

inline constexpr std::size_t kDefaultBudgetFactor = 10;

/// interaction = (7pi/4)/g; total = n_interactions * interaction;
/// feasible iff total < min(T_r, T_c).
TimingBudget timing_budget(double g, double radiative_time_s, double cavity_decay_time_s,
                           std::size_t n_interactions = kDefaultBudgetFactor);

}  // namespace cavity_swap
