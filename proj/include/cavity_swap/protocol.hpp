#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavity_swap/qstate.hpp"

namespace cavity_swap {

/// Subsystem labels used by every protocol run.
namespace labels {
inline const std::string kAliceAtom = "atom1";
inline const std::string kClareAtom = "atom2";
inline const std::string kClareCavity = "cavity3";
inline const std::string kBobCavity = "cavity4";
inline const std::string kBobAtom = "atomB";
}  // namespace labels

inline constexpr double kMagicPhase = 7.0 * std::numbers::pi / 4.0;
inline constexpr double kSwapPhase = std::numbers::pi / 2.0;

enum class Variant {
  /// Clare detects atom 2 and keeps the |e> outcome.
  MeasureAtom,
  /// Clare puts a click/no-click detector on cavity 3 and keeps "vacuum".
  MeasureCavityVacuum,
};

enum class Encoding {
  /// (a|ee> + b|gg>)_12 (x) (a'|11> + b'|00>)_34
  SameExcitation,
  /// (a|ge> + b|eg>)_12 (x) (a'|10> + b'|01>)_34
  SingleExcitation,
};

std::string_view to_string(Variant v);
std::string_view to_string(Encoding e);
/// Accepts "atom"/"measure-atom" and "cavity-vacuum"/"measure-cavity-vacuum".
std::optional<Variant> parse_variant(std::string_view text);
/// Accepts "same"/"same-excitation" and "single"/"single-excitation".
std::optional<Encoding> parse_encoding(std::string_view text);

struct ProtocolParams {
  double b = 0.6;
  double k = 0.0;
  double gt_clare = kMagicPhase;
  Variant variant = Variant::MeasureAtom;
  Encoding encoding = Encoding::SameExcitation;
  bool bob_readout = false;
  double gt_bob = kSwapPhase;
  std::size_t cavity_truncation = kDefaultCavityDimension;

  double a() const;
  /// Cavity-pair coefficients b(1+k) and sqrt(1 - b^2 (1+k)^2).
  double b_cavity() const { return b * (1.0 + k); }
  double a_cavity() const;

  /// Throws InvalidParams.
  void validate() const;
};

struct ProtocolResult {
  ProtocolParams params;
  /// Probability of the post-selected detector outcome.
  double outcome_probability = 0.0;
  /// Fidelity of the reduced (atom 1, cavity 4) state against the target.
  double fidelity = 0.0;
  /// Coincidence probability: detector outcome AND the unmeasured partner
  /// (cavity 3 for MeasureAtom, atom 2 for MeasureCavityVacuum) in its
  /// target-carrying level. This is the success probability the closed-form
  /// P, P' and P_new describe.
  double useful_probability = 0.0;
  /// outcome_probability * fidelity, the target component's weight. Equal to
  /// useful_probability whenever the heralded branch is the target itself.
  double target_weight = 0.0;
  StateVector post_state;
  StateVector target_state;

  /// Filled only when params.bob_readout is set.
  std::optional<StateVector> bob_state;
  std::optional<double> bob_fidelity;
};

/// Layout (atom1, atom2, cavity3, cavity4).
SystemLayout protocol_layout(std::size_t cavity_truncation = kDefaultCavityDimension);

StateVector prepare_initial(const ProtocolParams& params);

/// Clare's detector for the chosen variant, and the outcome kept.
MeasurementSpec clare_detector(const ProtocolParams& params, const SystemLayout& layout);
std::string_view heralded_outcome(Variant variant);

/// Ideal (atom1, cavity4) state: (|e,0> + i|g,1>)/sqrt2 for SameExcitation,
/// (|e,0> - i|g,1>)/sqrt2 for SingleExcitation.
StateVector swap_target(Encoding encoding, std::size_t cavity_truncation = kDefaultCavityDimension);
/// Two-atom state the ideal target maps to after Bob's readout at pi/2:
/// (|eg> + |ge>)/sqrt2 resp. (|eg> - |ge>)/sqrt2 on (atom1, atomB).
StateVector bob_target(Encoding encoding);

ProtocolResult run_swap(const ProtocolParams& params);

/// Appends Bob's atom in |g> after all subsystems and lets it interact with
/// cavity 4 for the phase gt_bob.
StateVector bob_readout(const StateVector& state, double gt_bob);
StateVector bob_readout(const ProtocolResult& result, double gt_bob);

struct BranchReport {
  /// e.g. "atom2=e,cavity3=0"
  std::string label;
  std::vector<std::size_t> complement_indices;
  /// Joint probability of the detector outcome and this branch.
  double weight = 0.0;
  /// |<target (x) branch | state>|^2, unnormalized like `weight`.
  double overlap = 0.0;
};

/// Post-selects `outcome` of `detector` on the (pre-measurement) `state`
/// without renormalizing, then splits it along the basis of every subsystem
/// not in `target`. Branches of zero weight are omitted. Weights sum to the
/// outcome probability; overlaps sum to outcome probability times fidelity.
std::vector<BranchReport> exact_branch_decomposition(const StateVector& state,
                                                     const MeasurementSpec& detector,
                                                     std::string_view outcome,
                                                     const StateVector& target);

}  // namespace cavity_swap
