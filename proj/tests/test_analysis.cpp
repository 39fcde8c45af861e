#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "cavity_swap/analysis.hpp"
#include "cavity_swap/report.hpp"

using namespace cavity_swap;

TEST_CASE("fidelity_formula_A") {
  CHECK(std::abs(fidelity_formula_A(0.6, kMagicPhase) - 0.9889) < 5e-4);
  // cos(sqrt2 gt) = 0 at gt = pi / (2 sqrt2).
  const double dark = std::numbers::pi / (2.0 * std::numbers::sqrt2);
  for (double b : {0.05, 0.3, 0.9}) CHECK(fidelity_formula_A(b, dark) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(fidelity_formula_A(0.25, kMagicPhase) - 0.915) < 1e-3);
  CHECK(fidelity_formula_A(0.25, kMagicPhase) > 0.9);
  CHECK_THROWS_AS(fidelity_formula_A(0.0, kMagicPhase), Error);
  CHECK_THROWS_AS(fidelity_formula_A(1.0, kMagicPhase), Error);
}

TEST_CASE("mismatch closed forms") {
  CHECK(pnew_formula(0.6, 0.1) == doctest::Approx(0.240984).epsilon(1e-12));
  CHECK(std::abs(fnew_formula(0.6, 0.1, kMagicPhase) - 0.98463) < 1e-5);
  CHECK(pnew_formula(0.6, 0.0) == doctest::Approx(0.2304).epsilon(1e-14));
  for (int i = 1; i < 20; ++i) {
    const double b = i / 20.0;
    CHECK(std::abs(pnew_formula(b, 0.0) - b * b * (1 - b * b)) < 1e-15);
    for (double gt : {0.1, 1.0, kMagicPhase, 9.0})
      CHECK(std::abs(fnew_formula(b, 0.0, gt) - fidelity_formula_A(b, gt)) < 1e-14);
    CHECK(std::abs(fidelity_formula_B(b, 0.0) - (1 - b * b)) < 1e-14);
  }
  CHECK_THROWS_AS(pnew_formula(0.9, 0.2), Error);
  CHECK_THROWS_AS(fnew_formula(0.9, 0.2, kMagicPhase), Error);
}

TEST_CASE("property: formula depends on cos^2 only") {
  // gt and -gt flip the sign of sin(sqrt2 gt) and keep cos.
  for (int i = 1; i < 20; ++i) {
    const double b = i / 20.0;
    for (double gt : {0.2, 1.7, kMagicPhase}) CHECK(fidelity_formula_A(b, gt) == fidelity_formula_A(b, -gt));
  }
}

TEST_CASE("linear_range") {
  CHECK(linear_range(0.05, 0.95, 0.01).size() == 91);
  CHECK(linear_range(0.5, 0.5, 0.1).size() == 1);
  CHECK_THROWS_AS(linear_range(0.9, 0.1, 0.01), Error);
  CHECK_THROWS_AS(linear_range(0.1, 0.9, 0.0), Error);
}

TEST_CASE("sweep: fidelity-vs-b curve") {
  const auto records = sweep(figure1_preset());
  REQUIRE(records.size() == 91);
  for (std::size_t i = 1; i < records.size(); ++i) CHECK(records[i].fidelity > records[i - 1].fidelity);
  for (const auto& r : records) {
    CHECK(r.abs_deviation < 1e-9);
    CHECK(r.abs_deviation == std::max(std::abs(r.fidelity - r.fidelity_formula),
                                      std::abs(r.useful_probability - r.probability_formula)));
  }
  const auto& at06 = records[55];
  CHECK(at06.b == doctest::Approx(0.6));
  CHECK(std::abs(at06.fidelity - 0.9889) < 5e-4);

  // The 0.9 crossing, inverted by hand: b^2 = 9c^2 / (1 + 9c^2).
  const double c2 = std::pow(std::cos(std::numbers::sqrt2 * kMagicPhase), 2);
  const double crossing = std::sqrt(9 * c2 / (1 + 9 * c2));
  CHECK(std::abs(fidelity_crossing(0.9) - crossing) < 1e-12);
  CHECK(std::abs(crossing - 0.2302) < 1e-4);
  for (const auto& r : records) CHECK((r.fidelity > 0.9) == (r.b > crossing));
}

TEST_CASE("sweep: peak success probability") {
  SweepSpec spec;
  spec.b_values = linear_range(0.005, 0.995, 0.005);
  const auto records = sweep(spec);
  auto best = std::max_element(records.begin(), records.end(),
                               [](const auto& x, const auto& y) { return x.useful_probability < y.useful_probability; });
  CHECK(std::abs(best->useful_probability - 0.25) < 1e-4);
  CHECK(std::abs(best->b - 1 / std::numbers::sqrt2) < 0.005);
}

TEST_CASE("sweep: edge cases") {
  SweepSpec empty;
  CHECK(sweep(empty).empty());
  SweepSpec bad;
  bad.b_values = {0.9};
  bad.k_values = {0.2};
  CHECK_THROWS_AS(sweep(bad), Error);
}

TEST_CASE("sweep: deterministic ordering across thread counts") {
  SweepSpec spec;
  spec.variant = Variant::MeasureCavityVacuum;
  spec.b_values = linear_range(0.1, 0.8, 0.05);
  spec.k_values = {-0.1, 0.0, 0.1};
  spec.gt_values = {kMagicPhase, 1.0};
  const auto serial = sweep(spec, 1);
  const auto parallel = sweep(spec, 4);
  REQUIRE(serial.size() == 15 * 3 * 2);
  std::ostringstream a, b;
  write_sweep_csv(a, serial);
  write_sweep_csv(b, parallel);
  CHECK(a.str() == b.str());
  // b outermost, gt innermost.
  CHECK(serial[0].gt == kMagicPhase);
  CHECK(serial[1].gt == 1.0);
  CHECK(serial[2].k == 0.0);
  CHECK(serial[6].b == doctest::Approx(0.15));
}

TEST_CASE("sweep_thread_count honours the environment") {
  setenv("CAVITY_SWAP_THREADS", "3", 1);
  CHECK(sweep_thread_count() == 3);
  setenv("CAVITY_SWAP_THREADS", "junk", 1);
  CHECK(sweep_thread_count() >= 1);
  unsetenv("CAVITY_SWAP_THREADS");
}

TEST_CASE("timing_budget") {
  const double g = 2 * std::numbers::pi * 25e3;
  const TimingBudget t = timing_budget(g, 3e-2, 1e-3);
  CHECK(t.interaction_time_s == doctest::Approx(3.5e-5).epsilon(1e-12));
  CHECK(t.total_time_s == doctest::Approx(3.5e-4).epsilon(1e-12));
  CHECK(t.feasible);
  CHECK(timing_budget(10 * g, 3e-2, 1e-3).interaction_time_s == doctest::Approx(3.5e-6).epsilon(1e-12));
  CHECK_FALSE(timing_budget(g, 3e-2, 1e-5).feasible);
  CHECK(timing_budget(g, 3e-2, 1e-3, 20).total_time_s == doctest::Approx(7e-4).epsilon(1e-12));
  CHECK_THROWS_AS(timing_budget(-1.0, 3e-2, 1e-3), Error);
  CHECK_THROWS_AS(timing_budget(g, 0.0, 1e-3), Error);
}

TEST_CASE("report writers") {
  const auto records = sweep(figure1_preset());
  std::ostringstream csv;
  write_sweep_csv(csv, records);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == kSweepCsvHeader);
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 91);

  const auto json = nlohmann::json::parse(sweep_json(records).dump());
  REQUIRE(json.size() == 91);
  CHECK(json[55]["fidelity"].get<double>() == records[55].fidelity);
  CHECK(json[0]["variant"] == "measure-atom");

  std::ostringstream svg;
  write_fidelity_svg(svg, records);
  CHECK(svg.str().rfind("<svg", 0) == 0);
  CHECK(svg.str().find("<polyline") != std::string::npos);

  CHECK(format_exact(0.1) == "0.1");
  CHECK(std::stod(format_exact(records[3].fidelity)) == records[3].fidelity);
}
