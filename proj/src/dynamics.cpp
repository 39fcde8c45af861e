#include "cavity_swap/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cavity_swap {

namespace {

constexpr double kLeakProbability = 1e-24;

struct PairPositions {
  std::size_t atom;
  std::size_t cavity;
  std::size_t cavity_dim;
};

PairPositions resolve(const SystemLayout& layout, const JCInteraction& interaction) {
  const std::size_t atom = layout.position(interaction.atom_label);
  const std::size_t cavity = layout.position(interaction.cavity_label);
  if (layout.subsystems()[atom].kind != SubsystemKind::Atom)
    throw Error(ErrorKind::LabelMismatch, "'" + interaction.atom_label + "' is not an atom");
  if (layout.subsystems()[cavity].kind != SubsystemKind::Cavity)
    throw Error(ErrorKind::LabelMismatch, "'" + interaction.cavity_label + "' is not a cavity");
  if (!std::isfinite(interaction.phase))
    throw Error(ErrorKind::InvalidParams, "interaction phase must be finite");
  return {atom, cavity, layout.subsystems()[cavity].dimension};
}

void check_leak(const StateVector& state, const PairPositions& pair) {
  const auto& layout = state.layout();
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (layout.local_index(i, pair.atom) == kExcited &&
        layout.local_index(i, pair.cavity) == pair.cavity_dim - 1 &&
        std::norm(state[i]) > kLeakProbability)
      throw Error(ErrorKind::TruncationLeak,
                  "amplitude on |e," + std::to_string(pair.cavity_dim - 1) +
                      "> would leave the truncated Fock space");
  }
}

}  // namespace

StateVector jc_propagate(const StateVector& state, const JCInteraction& interaction) {
  const auto& layout = state.layout();
  const PairPositions pair = resolve(layout, interaction);
  check_leak(state, pair);

  const std::size_t atom_stride = layout.stride(pair.atom);
  const std::size_t cavity_stride = layout.stride(pair.cavity);

  Amplitudes out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (layout.local_index(i, pair.atom) != kExcited) continue;
    const std::size_t n = layout.local_index(i, pair.cavity);
    if (n + 1 >= pair.cavity_dim) continue;  // empty by the leak check
    // |e,n> at i, its partner |g,n+1> at j.
    const std::size_t j = i - atom_stride + cavity_stride;
    const double angle = std::sqrt(static_cast<double>(n + 1)) * interaction.phase;
    const double c = std::cos(angle);
    const Complex mis{0.0, -std::sin(angle)};
    out[i] = c * state[i] + mis * state[j];
    out[j] = c * state[j] + mis * state[i];
  }
  return StateVector(layout, std::move(out));
}

Eigen::MatrixXcd jc_hamiltonian_matrix(const SystemLayout& layout, const JCInteraction& interaction) {
  const PairPositions pair = resolve(layout, interaction);
  const auto dim = static_cast<Eigen::Index>(layout.total_dimension());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  // a S+ : |g, m> -> sqrt(m) |e, m-1>. Fill it, then add the adjoint.
  for (std::size_t col = 0; col < layout.total_dimension(); ++col) {
    auto local = layout.multi_index(col);
    const std::size_t m = local[pair.cavity];
    if (local[pair.atom] != kGround || m == 0) continue;
    local[pair.atom] = kExcited;
    local[pair.cavity] = m - 1;
    const std::size_t row = layout.flat_index(local);
    h(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        std::sqrt(static_cast<double>(m));
  }
  Eigen::MatrixXcd adjoint = h.adjoint();
  h += adjoint;
  return h;
}

StateVector jc_propagate_oracle(const StateVector& state, const JCInteraction& interaction) {
  const auto& layout = state.layout();
  check_leak(state, resolve(layout, interaction));

  const Eigen::MatrixXcd h = jc_hamiltonian_matrix(layout, interaction);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidParams, "eigendecomposition failed");

  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex{0.0, -interaction.phase}).array().exp();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();

  Eigen::Map<const Eigen::VectorXcd> in(state.amplitudes().data(),
                                        static_cast<Eigen::Index>(state.dimension()));
  const Eigen::VectorXcd evolved = u * in;
  return StateVector(layout, Amplitudes(evolved.begin(), evolved.end()));
}

std::size_t excitation_number(const SystemLayout& layout, std::size_t joint_index) {
  std::size_t total = 0;
  for (std::size_t p = 0; p < layout.size(); ++p) total += layout.local_index(joint_index, p);
  return total;
}

}  // namespace cavity_swap
