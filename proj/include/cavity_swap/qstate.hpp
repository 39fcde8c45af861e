#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cavity_swap/error.hpp"

namespace cavity_swap {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Local basis indices of a two-level atom.
inline constexpr std::size_t kGround = 0;
inline constexpr std::size_t kExcited = 1;

inline constexpr std::size_t kDefaultCavityDimension = 3;

/// Tolerance on |<psi|psi> - 1| accepted as "normalized" input.
inline constexpr double kNormTolerance = 1e-10;
/// Outcomes below this probability carry no post-measurement state.
inline constexpr double kVanishingProbability = 1e-15;

enum class SubsystemKind { Atom, Cavity };

struct SubsystemSpec {
  std::string label;
  SubsystemKind kind = SubsystemKind::Atom;
  std::size_t dimension = 2;

  static SubsystemSpec atom(std::string label);
  static SubsystemSpec cavity(std::string label, std::size_t dimension = kDefaultCavityDimension);

  bool operator==(const SubsystemSpec&) const = default;
};

/// Ordered tensor-product layout. Joint indices are row-major in subsystem
/// order: the last subsystem varies fastest.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<SubsystemSpec> subsystems);

  std::span<const SubsystemSpec> subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  std::size_t total_dimension() const { return total_dimension_; }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Position of `label`; throws UnknownLabel.
  std::size_t position(std::string_view label) const;
  const SubsystemSpec& at(std::string_view label) const { return subsystems_[position(label)]; }

  /// Distance in the joint index between neighbouring local indices of the
  /// subsystem at `position`.
  std::size_t stride(std::size_t position) const { return strides_[position]; }
  std::size_t local_index(std::size_t joint_index, std::size_t position) const {
    return (joint_index / strides_[position]) % subsystems_[position].dimension;
  }

  std::vector<std::size_t> multi_index(std::size_t joint_index) const;
  std::size_t flat_index(std::span<const std::size_t> local_indices) const;

  /// Layout of `this` followed by `other`; throws LabelCollision.
  SystemLayout concat(const SystemLayout& other) const;
  /// Layout of every subsystem not named in `labels`, in original order.
  SystemLayout without(std::span<const std::string> labels) const;

  bool operator==(const SystemLayout& other) const { return subsystems_ == other.subsystems_; }

 private:
  std::vector<SubsystemSpec> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_dimension_ = 1;
};

/// Complex amplitudes over a layout's joint basis. Values are immutable;
/// every operation returns a new state. The norm is not forced to one, so
/// projected (unnormalized) branches can be represented too.
class StateVector {
 public:
  /// Throws DimensionMismatch on a length mismatch and ZeroNorm if any
  /// amplitude is non-finite.
  StateVector(SystemLayout layout, Amplitudes amplitudes);

  const SystemLayout& layout() const { return layout_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t joint_index) const { return amplitudes_[joint_index]; }
  std::size_t dimension() const { return amplitudes_.size(); }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tolerance = kNormTolerance) const;
  /// Throws ZeroNorm.
  StateVector normalized() const;

 private:
  SystemLayout layout_;
  Amplitudes amplitudes_;
};

/// Normalized tensor product of per-subsystem local states, in layout order.
StateVector make_state(const SystemLayout& layout, std::span<const Amplitudes> local_states);
/// Normalized explicit amplitude list.
StateVector make_state(const SystemLayout& layout, Amplitudes amplitudes);
/// Joint basis state with the given local index per subsystem.
StateVector basis_state(const SystemLayout& layout, std::span<const std::size_t> local_indices);
StateVector basis_state(const SystemLayout& layout, std::initializer_list<std::size_t> local_indices);

/// Throws LabelCollision when the layouts share a label.
StateVector tensor(const StateVector& left, const StateVector& right);

Complex inner_product(const StateVector& bra, const StateVector& ket);

struct OutcomeCell {
  std::string name;
  std::vector<std::size_t> indices;
};

struct MeasurementSpec {
  std::string target_label;
  std::vector<OutcomeCell> partition;

  /// One cell per basis state: {g, e} for atoms, {0, 1, ...} for cavities.
  static MeasurementSpec computational(const SubsystemSpec& subsystem);
  /// Click/no-click photon detector: {vacuum: {0}, nonvacuum: {1..d-1}}.
  static MeasurementSpec vacuum_detector(const SubsystemSpec& cavity);

  const OutcomeCell& cell(std::string_view name) const;
};

struct MeasurementOutcome {
  std::string name;
  double probability = 0.0;
  /// Empty when probability < kVanishingProbability.
  std::optional<StateVector> post_state;

  bool vanishing() const { return !post_state.has_value(); }
};

/// Unnormalized projection of `state` onto local indices `cell` of `label`.
StateVector project(const StateVector& state, std::string_view label,
                    std::span<const std::size_t> cell);

/// One outcome per partition cell, in partition order; zero-probability
/// outcomes are kept and flagged.
std::vector<MeasurementOutcome> measure(const StateVector& state, const MeasurementSpec& spec);

/// Component of `state` along `target` for one basis state of the
/// complementary subsystems.
struct Branch {
  std::vector<std::size_t> complement_indices;
  /// Squared norm of the branch, <psi_k|psi_k>.
  double weight = 0.0;
  /// <target (x) k | state>.
  Complex overlap;
};

/// Decomposes `state` along the complementary basis of `target`'s labels.
/// Works on unnormalized states. Throws LabelMismatch when `target` has a
/// label missing from `state` or a dimension disagreeing with it.
std::vector<Branch> branches_against(const StateVector& state, const StateVector& target,
                                     SystemLayout* complement_layout = nullptr);

/// <target| rho_sub |target> for the reduced state of `state` on target's
/// labels. Both inputs must be normalized.
double fidelity_against_pure(const StateVector& state, const StateVector& target);

/// Multiplies amplitudes by exp(i * phases[n]) where n is the local index of
/// `label`.
StateVector apply_local_phase(const StateVector& state, std::string_view label,
                              std::span<const double> phases);

}  // namespace cavity_swap
