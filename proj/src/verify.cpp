#include "cavity_swap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cavity_swap/analysis.hpp"
#include "cavity_swap/protocol.hpp"
#include "cavity_swap/sampling.hpp"

namespace cavity_swap {

namespace {

class Recorder {
 public:
  explicit Recorder(const VerifyOptions& options) : options_(options) {}

  template <typename Fn>
  void check(std::string name, double tolerance, Fn&& deviation_fn) {
    double deviation = std::numeric_limits<double>::infinity();
    try {
      deviation = deviation_fn();
    } catch (const std::exception&) {
      // reported as an infinite deviation
    }
    const double tol = options_.tolerance.value_or(tolerance);
    results_.push_back({std::move(name), deviation, tol, std::isfinite(deviation) && deviation <= tol});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const VerifyOptions& options_;
  std::vector<CheckResult> results_;
};

double max_amplitude_deviation(const StateVector& x, const StateVector& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

double oracle_deviation(const VerifyOptions& options, const SystemLayout& layout,
                        const std::string& atom, const std::string& cavity) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(-4.0 * std::numbers::pi, 4.0 * std::numbers::pi);
  double worst = 0.0;
  for (std::size_t n = 0; n < options.oracle_cases; ++n) {
    const StateVector psi = random_leak_free_state(layout, atom, cavity, rng);
    const JCInteraction jc{atom, cavity, phase(rng)};
    worst = std::max(worst, max_amplitude_deviation(options.propagator(psi, jc), jc_propagate_oracle(psi, jc)));
  }
  return worst;
}

ProtocolResult swap_at(double b, double k, Variant variant) {
  ProtocolParams p;
  p.b = b;
  p.k = k;
  p.variant = variant;
  return run_swap(p);
}

double max_sweep_deviation(const SweepSpec& spec) {
  double worst = 0.0;
  for (const auto& r : sweep(spec)) worst = std::max(worst, r.abs_deviation);
  return worst;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  Recorder rec(options);

  rec.check("oracle equivalence, atom (x) cavity(4)", 1e-9, [&] {
    const SystemLayout layout({SubsystemSpec::atom("atom"), SubsystemSpec::cavity("cavity", 4)});
    return oracle_deviation(options, layout, "atom", "cavity");
  });
  rec.check("oracle equivalence, four-party protocol space", 1e-9, [&] {
    return oracle_deviation(options, protocol_layout(), labels::kClareAtom, labels::kClareCavity);
  });

  rec.check("magic angle cos(sqrt2 * 7pi/4) = 0.079", 5e-4,
            [] { return std::abs(std::cos(std::numbers::sqrt2 * kMagicPhase) - 0.079); });

  rec.check("formula vs simulation, fidelity-vs-b curve", 1e-9,
            [] { return max_sweep_deviation(figure1_preset()); });
  for (Variant variant : {Variant::MeasureAtom, Variant::MeasureCavityVacuum}) {
    rec.check("formula vs simulation, mismatch grid, " + std::string(to_string(variant)), 1e-9, [variant] {
      SweepSpec spec;
      spec.variant = variant;
      spec.b_values = linear_range(0.1, 0.8, 0.1);
      spec.k_values = linear_range(-0.2, 0.2, 0.1);
      return max_sweep_deviation(spec);
    });
  }

  rec.check("fidelity at b=0.6 = 0.9889", 5e-4,
            [] { return std::abs(swap_at(0.6, 0.0, Variant::MeasureAtom).fidelity - 0.9889); });
  rec.check("success probability at b=0.6 = 0.2304", 1e-6,
            [] { return std::abs(swap_at(0.6, 0.0, Variant::MeasureAtom).useful_probability - 0.2304); });
  rec.check("vacuum-detector fidelity at b=0.2 = 0.96", 1e-6,
            [] { return std::abs(swap_at(0.2, 0.0, Variant::MeasureCavityVacuum).fidelity - 0.96); });
  rec.check("vacuum-detector outcome probability at b=0.2 = 0.04", 1e-6, [] {
    return std::abs(swap_at(0.2, 0.0, Variant::MeasureCavityVacuum).outcome_probability - 0.04);
  });
  rec.check("P_new at b=0.6, k=0.1 = 0.24098", 5e-5,
            [] { return std::abs(swap_at(0.6, 0.1, Variant::MeasureAtom).useful_probability - 0.24098); });
  rec.check("F_new at b=0.6, k=0.1 = 0.98463", 5e-5,
            [] { return std::abs(swap_at(0.6, 0.1, Variant::MeasureAtom).fidelity - 0.98463); });
  rec.check("peak success probability = 0.25", 1e-4, [] {
    SweepSpec spec;
    spec.b_values = linear_range(0.005, 0.995, 0.005);
    double best = 0.0;
    for (const auto& r : sweep(spec)) best = std::max(best, r.useful_probability);
    return std::abs(best - 0.25);
  });

  const double g = 2.0 * std::numbers::pi * 25e3;
  rec.check("interaction time 3.5e-5 s (relative)", 1e-2,
            [g] { return std::abs(timing_budget(g, 3e-2, 1e-3).interaction_time_s / 3.5e-5 - 1.0); });
  rec.check("total time 3.5e-4 s (relative)", 1e-2,
            [g] { return std::abs(timing_budget(g, 3e-2, 1e-3).total_time_s / 3.5e-4 - 1.0); });

  return rec.take();
}

}  // namespace cavity_swap
