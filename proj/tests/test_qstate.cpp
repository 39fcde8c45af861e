#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cavity_swap/qstate.hpp"
#include "cavity_swap/sampling.hpp"
#include "oracles.hpp"

using namespace cavity_swap;

namespace {

SystemLayout atoms12() { return SystemLayout({SubsystemSpec::atom("atom1"), SubsystemSpec::atom("atom2")}); }
SystemLayout cavities34() {
  return SystemLayout({SubsystemSpec::cavity("cavity3"), SubsystemSpec::cavity("cavity4")});
}

template <typename Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidParams;
}

StateVector random_raw(const SystemLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Amplitudes amps(layout.total_dimension());
  for (auto& z : amps) z = {normal(rng), normal(rng)};
  return StateVector(layout, std::move(amps));
}

SystemLayout random_layout(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4), kind(0, 1), dim(2, 5);
  std::vector<SubsystemSpec> subs;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const std::string label = "s" + std::to_string(i);
    subs.push_back(kind(rng) ? SubsystemSpec::atom(label)
                             : SubsystemSpec::cavity(label, static_cast<std::size_t>(dim(rng))));
  }
  return SystemLayout(std::move(subs));
}

}  // namespace

TEST_CASE("layout validation") {
  CHECK(error_kind_of([] { SystemLayout({SubsystemSpec{"x", SubsystemKind::Atom, 3}}); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([] { SystemLayout({SubsystemSpec::cavity("c", 1)}); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([] { SystemLayout({SubsystemSpec::atom("x"), SubsystemSpec::cavity("x")}); }) ==
        ErrorKind::LabelCollision);
  const SystemLayout layout = cavity_swap::protocol_layout();
  CHECK(layout.total_dimension() == 36);
  CHECK(layout.stride(0) == 18);
  CHECK(layout.stride(3) == 1);
  CHECK(error_kind_of([&] { layout.position("nope"); }) == ErrorKind::UnknownLabel);
}

TEST_CASE("make_state: product of basis states") {
  const SystemLayout layout = cavity_swap::protocol_layout();
  const std::vector<Amplitudes> locals{{1, 0}, {1, 0}, {1, 0, 0}, {1, 0, 0}};
  const StateVector psi = make_state(layout, locals);
  CHECK(psi[0] == Complex{1.0, 0.0});
  CHECK(psi.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("make_state + tensor: initial four-party state") {
  const StateVector atoms = make_state(atoms12(), Amplitudes{0.6, 0, 0, 0.8});
  Amplitudes cav(9);
  cav[0] = 0.6;  // |00>
  cav[4] = 0.8;  // |11>
  const StateVector cavities = make_state(cavities34(), cav);
  const StateVector psi = tensor(atoms, cavities);

  CHECK(psi.layout() == cavity_swap::protocol_layout());
  // Strides (18, 9, 3, 1): |ee11> = 31, |ee00> = 27, |gg11> = 4, |gg00> = 0.
  CHECK(psi[31].real() == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(psi[27].real() == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(psi[4].real() == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(psi[0].real() == doctest::Approx(0.36).epsilon(1e-14));
  double rest = 0.0;
  for (std::size_t i = 0; i < psi.dimension(); ++i)
    if (i != 31 && i != 27 && i != 4 && i != 0) rest += std::norm(psi[i]);
  CHECK(rest == 0.0);
}

TEST_CASE("make_state errors") {
  CHECK(error_kind_of([] { make_state(atoms12(), Amplitudes(4)); }) == ErrorKind::ZeroNorm);
  CHECK(error_kind_of([] { make_state(atoms12(), Amplitudes(3, 1.0)); }) == ErrorKind::DimensionMismatch);
  const std::vector<Amplitudes> wrong{{1, 0}, {1, 0, 0}};
  CHECK(error_kind_of([&] { make_state(atoms12(), wrong); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([] {
          StateVector(atoms12(), Amplitudes{std::nan(""), 0, 0, 0});
        }) == ErrorKind::ZeroNorm);
}

TEST_CASE("tensor: basis product and label collision") {
  const SystemLayout a({SubsystemSpec::atom("a")});
  const SystemLayout c({SubsystemSpec::cavity("c")});
  const StateVector ec = tensor(basis_state(a, {kExcited}), basis_state(c, {0}));
  CHECK(ec[ec.layout().flat_index(std::vector<std::size_t>{kExcited, 0})] == Complex{1.0, 0.0});
  CHECK(error_kind_of([&] { tensor(basis_state(a, {0}), basis_state(a, {0})); }) == ErrorKind::LabelCollision);
}

TEST_CASE("property: tensor norm is multiplicative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    SystemLayout left = random_layout(rng);
    std::vector<SubsystemSpec> renamed;
    const SystemLayout right = random_layout(rng);
    for (const auto& s : right.subsystems()) renamed.push_back({"r" + s.label, s.kind, s.dimension});
    const StateVector x = random_raw(left, rng);
    const StateVector y = random_raw(SystemLayout(renamed), rng);
    const StateVector xy = tensor(x, y);
    CHECK(xy.norm() == doctest::Approx(x.norm() * y.norm()).epsilon(1e-12));
  }
}

TEST_CASE("measure: atom 2 after Clare's interaction") {
  const double a = 0.8, b = 0.6, gt = 7.0 * std::numbers::pi / 4.0;
  const StateVector psi = oracle::evolved_state(a, b, gt);
  const auto outcomes = measure(psi, MeasurementSpec::computational(psi.layout().at("atom2")));
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[1].name == "e");
  const double c = std::cos(std::sqrt(2.0) * gt);
  CHECK(outcomes[1].probability == doctest::Approx(a * a * b * b + a * a * a * a * c * c).epsilon(1e-12));
  CHECK(outcomes[1].probability == doctest::Approx(0.23295).epsilon(1e-4));
  CHECK(outcomes[0].probability + outcomes[1].probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measure: vacuum detector on cavity 3 gives b^2") {
  for (double b : {0.1, 0.2, 0.45, 0.6, 0.9}) {
    const double a = std::sqrt(1 - b * b);
    const StateVector psi = oracle::evolved_state(a, b, 7.0 * std::numbers::pi / 4.0);
    const auto outcomes = measure(psi, MeasurementSpec::vacuum_detector(psi.layout().at("cavity3")));
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].name == "vacuum");
    CHECK(std::abs(outcomes[0].probability - b * b) < 1e-12);
  }
}

TEST_CASE("measure: basis state has a certain outcome, others flagged") {
  const SystemLayout layout = cavity_swap::protocol_layout();
  const StateVector psi = basis_state(layout, {kGround, kGround, 0, 0});
  const auto outcomes = measure(psi, MeasurementSpec::computational(layout.at("cavity3")));
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[0].probability == 1.0);
  CHECK_FALSE(outcomes[0].vanishing());
  CHECK(outcomes[1].vanishing());
  CHECK(outcomes[2].vanishing());
}

TEST_CASE("measure errors") {
  const SystemLayout layout = cavity_swap::protocol_layout();
  const StateVector psi = basis_state(layout, {0, 0, 0, 0});
  CHECK(error_kind_of([&] { measure(psi, MeasurementSpec{"atom9", {{"x", {0}}}}); }) == ErrorKind::UnknownLabel);
  const StateVector half(layout, Amplitudes(36, 0.1));
  CHECK(error_kind_of([&] { measure(half, MeasurementSpec::computational(layout.at("atom1"))); }) ==
        ErrorKind::UnnormalizedInput);
  CHECK(error_kind_of([&] { measure(psi, MeasurementSpec{"atom1", {{"g", {0}}}}); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([&] { measure(psi, MeasurementSpec{"atom1", {{"g", {0, 1}}, {"e", {1}}}}); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("property: measurement completeness and projector idempotence") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const SystemLayout layout = random_layout(rng);
    const StateVector psi = random_state(layout, rng);
    std::uniform_int_distribution<std::size_t> pick(0, layout.size() - 1);
    const auto& target = layout.subsystems()[pick(rng)];

    // Random partition into up to three cells.
    std::uniform_int_distribution<int> cell_of(0, 2);
    MeasurementSpec spec{target.label, {{"c0", {}}, {"c1", {}}, {"c2", {}}}};
    for (std::size_t n = 0; n < target.dimension; ++n) spec.partition[cell_of(rng)].indices.push_back(n);

    const auto outcomes = measure(psi, spec);
    double total = 0.0;
    for (const auto& o : outcomes) total += o.probability;
    CHECK(std::abs(total - 1.0) < 1e-12);

    for (std::size_t c = 0; c < outcomes.size(); ++c) {
      if (outcomes[c].vanishing()) {
        CHECK(outcomes[c].probability < kVanishingProbability);
        continue;
      }
      const StateVector& post = *outcomes[c].post_state;
      CHECK(post.is_normalized(1e-12));
      const auto again = measure(post, spec);
      CHECK(std::abs(again[c].probability - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("fidelity: heralded state after atom detection against the ideal pair") {
  const double a = 0.8, b = 0.6, gt = 7.0 * std::numbers::pi / 4.0;
  const StateVector psi = oracle::evolved_state(a, b, gt);
  const auto outcomes = measure(psi, MeasurementSpec::computational(psi.layout().at("atom2")));
  const SystemLayout pair({SubsystemSpec::atom("atom1"), SubsystemSpec::cavity("cavity4")});
  Amplitudes t(6);
  t[pair.flat_index(std::vector<std::size_t>{kExcited, 0})] = 1.0;
  t[pair.flat_index(std::vector<std::size_t>{kGround, 1})] = kI;
  const StateVector target = make_state(pair, t);

  const double f = fidelity_against_pure(*outcomes[1].post_state, target);
  const double c = std::cos(std::sqrt(2.0) * gt);
  CHECK(f == doctest::Approx(b * b / (b * b + a * a * c * c)).epsilon(1e-12));
  CHECK(std::abs(f - 0.9889) < 5e-4);
}

TEST_CASE("fidelity: perfect and orthogonal targets") {
  std::mt19937_64 rng(5);
  const SystemLayout pair({SubsystemSpec::atom("p"), SubsystemSpec::cavity("q", 4)});
  const SystemLayout rest({SubsystemSpec::cavity("r", 3)});
  const StateVector target = random_state(pair, rng);
  CHECK(fidelity_against_pure(tensor(target, random_state(rest, rng)), target) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Target on |g,*>, state supported on |e,*> only.
  Amplitudes tg(8), se(8);
  tg[1] = 1.0;
  se[4 + 2] = 1.0;
  CHECK(fidelity_against_pure(StateVector(pair, se), StateVector(pair, tg)) == 0.0);
}

TEST_CASE("fidelity errors") {
  const SystemLayout pair({SubsystemSpec::atom("p"), SubsystemSpec::cavity("q")});
  const StateVector psi = basis_state(pair, {0, 0});
  const StateVector foreign = basis_state(SystemLayout({SubsystemSpec::atom("z")}), {0});
  CHECK(error_kind_of([&] { fidelity_against_pure(psi, foreign); }) == ErrorKind::LabelMismatch);
  const StateVector wrong_dim = basis_state(SystemLayout({SubsystemSpec::cavity("q", 4)}), {0});
  CHECK(error_kind_of([&] { fidelity_against_pure(psi, wrong_dim); }) == ErrorKind::LabelMismatch);
  const StateVector unnormalized(pair, Amplitudes(6, 1.0));
  CHECK(error_kind_of([&] { fidelity_against_pure(unnormalized, psi); }) == ErrorKind::UnnormalizedInput);
}

TEST_CASE("property: fidelity bounds, and plain overlap when nothing is traced out") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const SystemLayout layout = random_layout(rng);
    const StateVector psi = random_state(layout, rng);
    const StateVector phi = random_state(layout, rng);
    const double f = fidelity_against_pure(psi, phi);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(std::abs(f - std::norm(inner_product(phi, psi))) < 1e-12);

    // Reduced target on the first subsystem only.
    std::vector<SubsystemSpec> first{layout.subsystems()[0]};
    const StateVector sub = random_state(SystemLayout(first), rng);
    const double fr = fidelity_against_pure(psi, sub);
    CHECK(fr >= 0.0);
    CHECK(fr <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: basis index bijection") {
  std::mt19937_64 rng(3);
  std::vector<SystemLayout> layouts{cavity_swap::protocol_layout(), cavity_swap::protocol_layout(5)};
  for (int i = 0; i < 50; ++i) layouts.push_back(random_layout(rng));
  for (const auto& layout : layouts)
    for (std::size_t i = 0; i < layout.total_dimension(); ++i) CHECK(layout.flat_index(layout.multi_index(i)) == i);
}

TEST_CASE("apply_local_phase") {
  const SystemLayout pair({SubsystemSpec::atom("atom1"), SubsystemSpec::cavity("cavity4")});
  const std::size_t e0 = pair.flat_index(std::vector<std::size_t>{kExcited, 0});
  const std::size_t g1 = pair.flat_index(std::vector<std::size_t>{kGround, 1});
  Amplitudes t(6);
  t[e0] = 1.0;
  t[g1] = kI;
  const StateVector ideal = make_state(pair, t);

  SUBCASE("removing the relative phase") {
    const double phases[] = {-std::numbers::pi / 2, 0.0};
    const StateVector rotated = apply_local_phase(ideal, "atom1", phases);
    CHECK(std::abs(rotated[e0] - Complex{M_SQRT1_2, 0}) < 1e-15);
    CHECK(std::abs(rotated[g1] - Complex{M_SQRT1_2, 0}) < 1e-15);
  }
  SUBCASE("zero phases are the identity") {
    const double zeros[] = {0.0, 0.0, 0.0};
    CHECK(oracle::max_deviation(apply_local_phase(ideal, "cavity4", zeros), ideal) == 0.0);
  }
  SUBCASE("uniform pi is a global sign") {
    const double pis[] = {std::numbers::pi, std::numbers::pi};
    const StateVector flipped = apply_local_phase(ideal, "atom1", pis);
    CHECK(std::abs(flipped[e0] + ideal[e0]) < 1e-15);
    CHECK(fidelity_against_pure(flipped, ideal) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("errors") {
    const double two[] = {0.0, 0.0};
    CHECK(error_kind_of([&] { apply_local_phase(ideal, "atom7", two); }) == ErrorKind::UnknownLabel);
    CHECK(error_kind_of([&] { apply_local_phase(ideal, "cavity4", two); }) == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("property: local phases preserve the norm") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const SystemLayout layout = random_layout(rng);
    const StateVector psi = random_state(layout, rng);
    const auto& sub = layout.subsystems()[0];
    std::vector<double> phases(sub.dimension);
    for (auto& p : phases) p = angle(rng);
    CHECK(std::abs(apply_local_phase(psi, sub.label, phases).norm_squared() - 1.0) < 1e-12);
  }
}
