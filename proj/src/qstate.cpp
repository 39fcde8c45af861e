#include "cavity_swap/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace cavity_swap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::LabelCollision: return "LabelCollision";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::UnnormalizedInput: return "UnnormalizedInput";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::TruncationLeak: return "TruncationLeak";
    case ErrorKind::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

SubsystemSpec SubsystemSpec::atom(std::string label) {
  return {std::move(label), SubsystemKind::Atom, 2};
}

SubsystemSpec SubsystemSpec::cavity(std::string label, std::size_t dimension) {
  return {std::move(label), SubsystemKind::Cavity, dimension};
}

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<SubsystemSpec> subsystems)
    : subsystems_(std::move(subsystems)) {
  std::set<std::string_view> seen;
  for (const auto& s : subsystems_) {
    if (s.kind == SubsystemKind::Atom && s.dimension != 2)
      throw Error(ErrorKind::DimensionMismatch, "atom '" + s.label + "' must have dimension 2");
    if (s.kind == SubsystemKind::Cavity && s.dimension < 2)
      throw Error(ErrorKind::DimensionMismatch, "cavity '" + s.label + "' needs dimension >= 2");
    if (!seen.insert(s.label).second)
      throw Error(ErrorKind::LabelCollision, "duplicate label '" + s.label + "'");
  }
  strides_.assign(subsystems_.size(), 1);
  total_dimension_ = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = total_dimension_;
    total_dimension_ *= subsystems_[i].dimension;
  }
}

std::optional<std::size_t> SystemLayout::find(std::string_view label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return i;
  return std::nullopt;
}

std::size_t SystemLayout::position(std::string_view label) const {
  if (auto pos = find(label)) return *pos;
  throw Error(ErrorKind::UnknownLabel, "no subsystem labelled '" + std::string(label) + "'");
}

std::vector<std::size_t> SystemLayout::multi_index(std::size_t joint_index) const {
  std::vector<std::size_t> out(subsystems_.size());
  for (std::size_t i = 0; i < subsystems_.size(); ++i) out[i] = local_index(joint_index, i);
  return out;
}

std::size_t SystemLayout::flat_index(std::span<const std::size_t> local_indices) const {
  if (local_indices.size() != subsystems_.size())
    throw Error(ErrorKind::DimensionMismatch, "multi-index has wrong length");
  std::size_t index = 0;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (local_indices[i] >= subsystems_[i].dimension)
      throw Error(ErrorKind::DimensionMismatch,
                  "local index out of range for '" + subsystems_[i].label + "'");
    index += local_indices[i] * strides_[i];
  }
  return index;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<SubsystemSpec> joined = subsystems_;
  for (const auto& s : other.subsystems_) {
    if (find(s.label))
      throw Error(ErrorKind::LabelCollision, "label '" + s.label + "' present on both sides");
    joined.push_back(s);
  }
  return SystemLayout(std::move(joined));
}

SystemLayout SystemLayout::without(std::span<const std::string> labels) const {
  std::vector<SubsystemSpec> kept;
  for (const auto& s : subsystems_)
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) kept.push_back(s);
  return SystemLayout(std::move(kept));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(SystemLayout layout, Amplitudes amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.total_dimension())
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(layout_.total_dimension()) + " amplitudes, got " +
                    std::to_string(amplitudes_.size()));
  for (const auto& z : amplitudes_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::ZeroNorm, "non-finite amplitude");
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& z : amplitudes_) sum += std::norm(z);
  return sum;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tolerance) const {
  return std::abs(norm_squared() - 1.0) <= tolerance;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n)) throw Error(ErrorKind::ZeroNorm, "cannot normalize");
  Amplitudes scaled(amplitudes_);
  for (auto& z : scaled) z /= n;
  return StateVector(layout_, std::move(scaled));
}

// ---------------------------------------------------------------------------
// Construction

StateVector make_state(const SystemLayout& layout, std::span<const Amplitudes> local_states) {
  if (local_states.size() != layout.size())
    throw Error(ErrorKind::DimensionMismatch, "one local state per subsystem required");
  Amplitudes joint{Complex{1.0, 0.0}};
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& local = local_states[i];
    if (local.size() != layout.subsystems()[i].dimension)
      throw Error(ErrorKind::DimensionMismatch,
                  "local state for '" + layout.subsystems()[i].label + "' has wrong dimension");
    Amplitudes next;
    next.reserve(joint.size() * local.size());
    for (const auto& x : joint)
      for (const auto& y : local) next.push_back(x * y);
    joint = std::move(next);
  }
  return StateVector(layout, std::move(joint)).normalized();
}

StateVector make_state(const SystemLayout& layout, Amplitudes amplitudes) {
  return StateVector(layout, std::move(amplitudes)).normalized();
}

StateVector basis_state(const SystemLayout& layout, std::span<const std::size_t> local_indices) {
  Amplitudes amps(layout.total_dimension());
  amps[layout.flat_index(local_indices)] = 1.0;
  return StateVector(layout, std::move(amps));
}

StateVector basis_state(const SystemLayout& layout, std::initializer_list<std::size_t> local_indices) {
  return basis_state(layout, std::span<const std::size_t>(local_indices.begin(), local_indices.size()));
}

StateVector tensor(const StateVector& left, const StateVector& right) {
  SystemLayout joined = left.layout().concat(right.layout());
  Amplitudes amps;
  amps.reserve(left.dimension() * right.dimension());
  for (const auto& x : left.amplitudes())
    for (const auto& y : right.amplitudes()) amps.push_back(x * y);
  return StateVector(std::move(joined), std::move(amps));
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (!(bra.layout() == ket.layout()))
    throw Error(ErrorKind::LabelMismatch, "inner product needs identical layouts");
  Complex sum{};
  for (std::size_t i = 0; i < bra.dimension(); ++i) sum += std::conj(bra[i]) * ket[i];
  return sum;
}

// ---------------------------------------------------------------------------
// Measurement

MeasurementSpec MeasurementSpec::computational(const SubsystemSpec& subsystem) {
  MeasurementSpec spec{subsystem.label, {}};
  if (subsystem.kind == SubsystemKind::Atom) {
    spec.partition = {{"g", {kGround}}, {"e", {kExcited}}};
  } else {
    for (std::size_t n = 0; n < subsystem.dimension; ++n)
      spec.partition.push_back({std::to_string(n), {n}});
  }
  return spec;
}

MeasurementSpec MeasurementSpec::vacuum_detector(const SubsystemSpec& cavity) {
  if (cavity.kind != SubsystemKind::Cavity)
    throw Error(ErrorKind::LabelMismatch, "'" + cavity.label + "' is not a cavity");
  OutcomeCell clicked{"nonvacuum", {}};
  for (std::size_t n = 1; n < cavity.dimension; ++n) clicked.indices.push_back(n);
  return {cavity.label, {{"vacuum", {0}}, std::move(clicked)}};
}

const OutcomeCell& MeasurementSpec::cell(std::string_view name) const {
  for (const auto& c : partition)
    if (c.name == name) return c;
  throw Error(ErrorKind::UnknownLabel, "no outcome named '" + std::string(name) + "'");
}

namespace {

void check_partition(const MeasurementSpec& spec, std::size_t dimension) {
  std::vector<int> hits(dimension, 0);
  for (const auto& cell : spec.partition)
    for (auto idx : cell.indices) {
      if (idx >= dimension)
        throw Error(ErrorKind::DimensionMismatch, "outcome '" + cell.name + "' index out of range");
      ++hits[idx];
    }
  if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
    throw Error(ErrorKind::DimensionMismatch,
                "partition of '" + spec.target_label + "' must cover each level exactly once");
}

void require_normalized(const StateVector& state, std::string_view what) {
  if (!state.is_normalized())
    throw Error(ErrorKind::UnnormalizedInput,
                std::string(what) + " has squared norm " + std::to_string(state.norm_squared()));
}

}  // namespace

StateVector project(const StateVector& state, std::string_view label,
                    std::span<const std::size_t> cell) {
  const auto& layout = state.layout();
  const std::size_t pos = layout.position(label);
  std::vector<bool> keep(layout.subsystems()[pos].dimension, false);
  for (auto idx : cell) {
    if (idx >= keep.size()) throw Error(ErrorKind::DimensionMismatch, "projector index out of range");
    keep[idx] = true;
  }
  Amplitudes amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (!keep[layout.local_index(i, pos)]) amps[i] = 0.0;
  return StateVector(layout, std::move(amps));
}

std::vector<MeasurementOutcome> measure(const StateVector& state, const MeasurementSpec& spec) {
  const auto& target = state.layout().at(spec.target_label);
  check_partition(spec, target.dimension);
  require_normalized(state, "measured state");

  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(spec.partition.size());
  for (const auto& cell : spec.partition) {
    StateVector branch = project(state, spec.target_label, cell.indices);
    MeasurementOutcome outcome{cell.name, branch.norm_squared(), std::nullopt};
    if (outcome.probability >= kVanishingProbability) outcome.post_state = branch.normalized();
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

// ---------------------------------------------------------------------------
// Reduced-state overlaps

std::vector<Branch> branches_against(const StateVector& state, const StateVector& target,
                                     SystemLayout* complement_layout) {
  const auto& layout = state.layout();
  const auto& tlayout = target.layout();

  // Position in `layout` of each target subsystem.
  std::vector<std::size_t> target_pos;
  std::vector<std::string> target_labels;
  for (const auto& t : tlayout.subsystems()) {
    auto pos = layout.find(t.label);
    if (!pos) throw Error(ErrorKind::LabelMismatch, "target label '" + t.label + "' not in state");
    if (layout.subsystems()[*pos] != t)
      throw Error(ErrorKind::LabelMismatch, "subsystem '" + t.label + "' differs between state and target");
    target_pos.push_back(*pos);
    target_labels.push_back(t.label);
  }
  SystemLayout complement = layout.without(target_labels);
  std::vector<std::size_t> complement_pos;
  for (const auto& c : complement.subsystems()) complement_pos.push_back(layout.position(c.label));

  std::vector<Branch> branches(complement.total_dimension());
  for (std::size_t k = 0; k < branches.size(); ++k)
    branches[k].complement_indices = complement.multi_index(k);

  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const Complex amp = state[i];
    if (amp == Complex{}) continue;
    std::size_t t_index = 0;
    for (std::size_t j = 0; j < target_pos.size(); ++j)
      t_index += layout.local_index(i, target_pos[j]) * tlayout.stride(j);
    std::size_t c_index = 0;
    for (std::size_t j = 0; j < complement_pos.size(); ++j)
      c_index += layout.local_index(i, complement_pos[j]) * complement.stride(j);
    branches[c_index].weight += std::norm(amp);
    branches[c_index].overlap += std::conj(target[t_index]) * amp;
  }
  if (complement_layout) *complement_layout = std::move(complement);
  return branches;
}

double fidelity_against_pure(const StateVector& state, const StateVector& target) {
  require_normalized(state, "state");
  require_normalized(target, "target");
  double fidelity = 0.0;
  for (const auto& b : branches_against(state, target)) fidelity += std::norm(b.overlap);
  return fidelity;
}

StateVector apply_local_phase(const StateVector& state, std::string_view label,
                              std::span<const double> phases) {
  const auto& layout = state.layout();
  const std::size_t pos = layout.position(label);
  if (phases.size() != layout.subsystems()[pos].dimension)
    throw Error(ErrorKind::DimensionMismatch, "one phase per local level required");
  Amplitudes amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] *= std::polar(1.0, phases[layout.local_index(i, pos)]);
  return StateVector(layout, std::move(amps));
}

}  // namespace cavity_swap
