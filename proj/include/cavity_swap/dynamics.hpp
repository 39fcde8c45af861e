#pragma once

#include <string>

#include <Eigen/Dense>

#include "cavity_swap/qstate.hpp"

namespace cavity_swap {

/// Resonant atom-cavity coupling acting for a dimensionless phase g*t.
struct JCInteraction {
  std::string atom_label;
  std::string cavity_label;
  double phase = 0.0;
};

/// Closed-form Jaynes-Cummings evolution exp(-i gt (a S+ + a^dag S-)).
///
/// Each manifold {|e,n>, |g,n+1>} rotates by the angle sqrt(n+1)*gt:
///   |e,n>   -> cos|e,n>   - i sin|g,n+1>
///   |g,n+1> -> cos|g,n+1> - i sin|e,n>
/// and |g,0> is stationary. Other subsystems are spectators.
///
/// Throws UnknownLabel, LabelMismatch (wrong subsystem kinds), or
/// TruncationLeak when |e, d-1> carries amplitude.
StateVector jc_propagate(const StateVector& state, const JCInteraction& interaction);

/// Joint-space matrix of a S+ + a^dag S- (in units of g) on the designated
/// pair, identity on spectators.
Eigen::MatrixXcd jc_hamiltonian_matrix(const SystemLayout& layout, const JCInteraction& interaction);

/// Reference evolution: exp(-i gt H) built from the eigendecomposition of the
/// dense Hermitian matrix. Shares no code with the manifold rotation.
StateVector jc_propagate_oracle(const StateVector& state, const JCInteraction& interaction);

/// Total excitation (atom e-count plus photon number, over all subsystems)
/// of a joint basis index.
std::size_t excitation_number(const SystemLayout& layout, std::size_t joint_index);

}  // namespace cavity_swap
