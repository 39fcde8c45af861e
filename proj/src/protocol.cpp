#include "cavity_swap/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavity_swap/dynamics.hpp"

namespace cavity_swap {

std::string_view to_string(Variant v) {
  return v == Variant::MeasureAtom ? "measure-atom" : "measure-cavity-vacuum";
}

std::string_view to_string(Encoding e) {
  return e == Encoding::SameExcitation ? "same-excitation" : "single-excitation";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "atom" || text == "measure-atom") return Variant::MeasureAtom;
  if (text == "cavity-vacuum" || text == "measure-cavity-vacuum") return Variant::MeasureCavityVacuum;
  return std::nullopt;
}

std::optional<Encoding> parse_encoding(std::string_view text) {
  if (text == "same" || text == "same-excitation") return Encoding::SameExcitation;
  if (text == "single" || text == "single-excitation") return Encoding::SingleExcitation;
  return std::nullopt;
}

double ProtocolParams::a() const { return std::sqrt(1.0 - b * b); }

double ProtocolParams::a_cavity() const {
  const double bc = b_cavity();
  return std::sqrt(1.0 - bc * bc);
}

void ProtocolParams::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); };
  if (!std::isfinite(b) || !(b > 0.0 && b < 1.0)) fail("b must lie in (0, 1)");
  if (!std::isfinite(k)) fail("k must be finite");
  if (!(std::abs(b_cavity()) < 1.0)) fail("|b(1+k)| must be < 1");
  if (!std::isfinite(gt_clare) || !std::isfinite(gt_bob)) fail("interaction phases must be finite");
  if (cavity_truncation < 3) fail("cavity truncation must be >= 3");
}

SystemLayout protocol_layout(std::size_t cavity_truncation) {
  return SystemLayout({SubsystemSpec::atom(labels::kAliceAtom), SubsystemSpec::atom(labels::kClareAtom),
                       SubsystemSpec::cavity(labels::kClareCavity, cavity_truncation),
                       SubsystemSpec::cavity(labels::kBobCavity, cavity_truncation)});
}

StateVector prepare_initial(const ProtocolParams& params) {
  params.validate();
  const std::size_t d = params.cavity_truncation;
  const SystemLayout atoms({SubsystemSpec::atom(labels::kAliceAtom), SubsystemSpec::atom(labels::kClareAtom)});
  const SystemLayout cavities({SubsystemSpec::cavity(labels::kClareCavity, d),
                               SubsystemSpec::cavity(labels::kBobCavity, d)});

  Amplitudes atom_amps(4), cavity_amps(d * d);
  auto atom_at = [&](std::size_t s1, std::size_t s2) -> Complex& { return atom_amps[atoms.flat_index(std::vector{s1, s2})]; };
  auto cavity_at = [&](std::size_t n3, std::size_t n4) -> Complex& {
    return cavity_amps[cavities.flat_index(std::vector{n3, n4})];
  };

  if (params.encoding == Encoding::SameExcitation) {
    atom_at(kExcited, kExcited) = params.a();
    atom_at(kGround, kGround) = params.b;
    cavity_at(1, 1) = params.a_cavity();
    cavity_at(0, 0) = params.b_cavity();
  } else {
    atom_at(kGround, kExcited) = params.a();
    atom_at(kExcited, kGround) = params.b;
    cavity_at(1, 0) = params.a_cavity();
    cavity_at(0, 1) = params.b_cavity();
  }
  return tensor(make_state(atoms, std::move(atom_amps)), make_state(cavities, std::move(cavity_amps)));
}

MeasurementSpec clare_detector(const ProtocolParams& params, const SystemLayout& layout) {
  if (params.variant == Variant::MeasureAtom)
    return MeasurementSpec::computational(layout.at(labels::kClareAtom));
  return MeasurementSpec::vacuum_detector(layout.at(labels::kClareCavity));
}

std::string_view heralded_outcome(Variant variant) {
  return variant == Variant::MeasureAtom ? "e" : "vacuum";
}

StateVector swap_target(Encoding encoding, std::size_t cavity_truncation) {
  const SystemLayout layout({SubsystemSpec::atom(labels::kAliceAtom),
                             SubsystemSpec::cavity(labels::kBobCavity, cavity_truncation)});
  Amplitudes amps(layout.total_dimension());
  const double sign = encoding == Encoding::SameExcitation ? 1.0 : -1.0;
  amps[layout.flat_index(std::vector<std::size_t>{kExcited, 0})] = 1.0;
  amps[layout.flat_index(std::vector<std::size_t>{kGround, 1})] = sign * kI;
  return make_state(layout, std::move(amps));
}

StateVector bob_target(Encoding encoding) {
  const SystemLayout layout({SubsystemSpec::atom(labels::kAliceAtom), SubsystemSpec::atom(labels::kBobAtom)});
  Amplitudes amps(4);
  const double sign = encoding == Encoding::SameExcitation ? 1.0 : -1.0;
  amps[layout.flat_index(std::vector<std::size_t>{kExcited, kGround})] = 1.0;
  amps[layout.flat_index(std::vector<std::size_t>{kGround, kExcited})] = sign;
  return make_state(layout, std::move(amps));
}

namespace {

// Level of the unmeasured partner that carries the target component.
struct Spectator {
  const std::string& label;
  std::size_t level;
};

Spectator heralding_spectator(Variant variant) {
  if (variant == Variant::MeasureAtom) return {labels::kClareCavity, 0};
  return {labels::kClareAtom, kExcited};
}

}  // namespace

ProtocolResult run_swap(const ProtocolParams& params) {
  const StateVector initial = prepare_initial(params);
  const StateVector evolved =
      jc_propagate(initial, {labels::kClareAtom, labels::kClareCavity, params.gt_clare});

  const MeasurementSpec detector = clare_detector(params, evolved.layout());
  const std::string_view keep = heralded_outcome(params.variant);
  const auto outcomes = measure(evolved, detector);
  const MeasurementOutcome* chosen = nullptr;
  for (const auto& o : outcomes)
    if (o.name == keep) chosen = &o;
  if (chosen == nullptr || chosen->vanishing())
    throw Error(ErrorKind::InvalidParams, "heralded outcome '" + std::string(keep) + "' has zero probability");

  StateVector target = swap_target(params.encoding, params.cavity_truncation);
  const double fidelity = fidelity_against_pure(*chosen->post_state, target);

  const Spectator spectator = heralding_spectator(params.variant);
  double coincidence = 0.0;
  SystemLayout complement;
  const StateVector heralded = project(evolved, detector.target_label, detector.cell(keep).indices);
  const auto branches = branches_against(heralded, target, &complement);
  const std::size_t spectator_pos = complement.position(spectator.label);
  for (const auto& br : branches)
    if (br.complement_indices[spectator_pos] == spectator.level) coincidence += br.weight;

  ProtocolResult result{
      .params = params,
      .outcome_probability = chosen->probability,
      .fidelity = fidelity,
      .useful_probability = coincidence,
      .target_weight = chosen->probability * fidelity,
      .post_state = *chosen->post_state,
      .target_state = std::move(target),
      .bob_state = std::nullopt,
      .bob_fidelity = std::nullopt,
  };
  if (params.bob_readout) {
    StateVector after = bob_readout(result.post_state, params.gt_bob);
    result.bob_fidelity = fidelity_against_pure(after, bob_target(params.encoding));
    result.bob_state = std::move(after);
  }
  return result;
}

StateVector bob_readout(const StateVector& state, double gt_bob) {
  const std::size_t cavity = state.layout().position(labels::kBobCavity);
  if (state.layout().subsystems()[cavity].kind != SubsystemKind::Cavity)
    throw Error(ErrorKind::LabelMismatch, "'" + labels::kBobCavity + "' is not a cavity");
  const SystemLayout bob({SubsystemSpec::atom(labels::kBobAtom)});
  const StateVector joined = tensor(state, basis_state(bob, {kGround}));
  return jc_propagate(joined, {labels::kBobAtom, labels::kBobCavity, gt_bob});
}

StateVector bob_readout(const ProtocolResult& result, double gt_bob) {
  return bob_readout(result.post_state, gt_bob);
}

std::vector<BranchReport> exact_branch_decomposition(const StateVector& state,
                                                     const MeasurementSpec& detector,
                                                     std::string_view outcome,
                                                     const StateVector& target) {
  const auto& measured = state.layout().at(detector.target_label);
  if (std::any_of(target.layout().subsystems().begin(), target.layout().subsystems().end(),
                  [&](const SubsystemSpec& s) { return s.label == measured.label; }))
    throw Error(ErrorKind::LabelMismatch, "target must not include the measured subsystem");

  const StateVector heralded = project(state, detector.target_label, detector.cell(outcome).indices);
  SystemLayout complement;
  const auto branches = branches_against(heralded, target, &complement);

  std::vector<BranchReport> reports;
  for (const auto& br : branches) {
    if (br.weight < kVanishingProbability) continue;
    std::ostringstream label;
    for (std::size_t p = 0; p < complement.size(); ++p) {
      const auto& sub = complement.subsystems()[p];
      if (p) label << ',';
      label << sub.label << '=';
      const std::size_t level = br.complement_indices[p];
      if (sub.kind == SubsystemKind::Atom)
        label << (level == kExcited ? 'e' : 'g');
      else
        label << level;
    }
    reports.push_back({label.str(), br.complement_indices, br.weight, std::norm(br.overlap)});
  }
  return reports;
}

}  // namespace cavity_swap
