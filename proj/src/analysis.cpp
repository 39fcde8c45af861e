#include "cavity_swap/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace cavity_swap {

namespace {

void check_coefficients(double b, double k) {
  if (!std::isfinite(b) || !(b > 0.0 && b < 1.0))
    throw Error(ErrorKind::InvalidParams, "b must lie in (0, 1)");
  if (!std::isfinite(k) || !(std::abs(b * (1.0 + k)) < 1.0))
    throw Error(ErrorKind::InvalidParams, "|b(1+k)| must be < 1");
}

double cos2_sqrt2(double gt) {
  const double c = std::cos(std::numbers::sqrt2 * gt);
  return c * c;
}

}  // namespace

double fidelity_formula_A(double b, double gt) {
  check_coefficients(b, 0.0);
  const double b2 = b * b;
  return b2 / (b2 + (1.0 - b2) * cos2_sqrt2(gt));
}

double pnew_formula(double b, double k) {
  check_coefficients(b, k);
  const double b2 = b * b;
  const double bk2 = b2 * (1.0 + k) * (1.0 + k);
  return 0.5 * ((1.0 - b2) * bk2 + b2 * (1.0 - bk2));
}

double fnew_formula(double b, double k, double gt) {
  check_coefficients(b, k);
  const double b2 = b * b;
  const double bk2 = b2 * (1.0 + k) * (1.0 + k);
  const double cross = std::sqrt(1.0 - b2) * b * (1.0 + k) + b * std::sqrt(1.0 - bk2);
  const double numerator = 0.5 * cross * cross;
  const double denominator =
      (1.0 - b2) * bk2 + b2 * (1.0 - bk2) + 2.0 * (1.0 - b2) * (1.0 - bk2) * cos2_sqrt2(gt);
  return numerator / denominator;
}

double fidelity_formula_B(double b, double k) {
  check_coefficients(b, k);
  const double a = std::sqrt(1.0 - b * b);
  const double bc = b * (1.0 + k);
  const double ac = std::sqrt(1.0 - bc * bc);
  const double cross = a * bc + b * ac;
  return 0.5 * cross * cross / (a * a * bc * bc + b * b * ac * ac + 2.0 * b * b * bc * bc);
}

std::vector<double> linear_range(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step <= 0.0)
    throw Error(ErrorKind::InvalidParams, "range needs finite bounds and a positive step");
  if (stop < start) throw Error(ErrorKind::InvalidParams, "range stop lies below start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = start + static_cast<double>(i) * step;
  return values;
}

std::size_t sweep_thread_count() {
  if (const char* env = std::getenv("CAVITY_SWAP_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepRecord evaluate_point(const SweepSpec& spec, double b, double k, double gt) {
  ProtocolParams params;
  params.b = b;
  params.k = k;
  params.gt_clare = gt;
  params.variant = spec.variant;
  params.encoding = spec.encoding;
  params.cavity_truncation = spec.cavity_truncation;
  const ProtocolResult result = run_swap(params);

  SweepRecord rec;
  rec.b = b;
  rec.k = k;
  rec.gt = gt;
  rec.variant = spec.variant;
  rec.outcome_probability = result.outcome_probability;
  rec.fidelity = result.fidelity;
  rec.useful_probability = result.useful_probability;
  rec.fidelity_formula =
      spec.variant == Variant::MeasureAtom ? fnew_formula(b, k, gt) : fidelity_formula_B(b, k);
  rec.probability_formula = pnew_formula(b, k);
  rec.abs_deviation = std::max(std::abs(rec.fidelity - rec.fidelity_formula),
                               std::abs(rec.useful_probability - rec.probability_formula));
  return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepSpec& spec, std::size_t threads) {
  const std::size_t nb = spec.b_values.size();
  const std::size_t nk = spec.k_values.size();
  const std::size_t ng = spec.gt_values.size();
  const std::size_t total = nb * nk * ng;
  if (total == 0) return {};

  for (double b : spec.b_values)
    for (double k : spec.k_values) check_coefficients(b, k);
  for (double gt : spec.gt_values)
    if (!std::isfinite(gt)) throw Error(ErrorKind::InvalidParams, "gt must be finite");

  std::vector<SweepRecord> records(total);
  auto point = [&](std::size_t idx) {
    const std::size_t ig = idx % ng;
    const std::size_t ik = (idx / ng) % nk;
    const std::size_t ib = idx / (ng * nk);
    records[idx] = evaluate_point(spec, spec.b_values[ib], spec.k_values[ik], spec.gt_values[ig]);
  };

  if (threads == 0) threads = sweep_thread_count();
  threads = std::min(threads, total);
  if (threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) point(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) {
        try {
          point(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

SweepSpec figure1_preset() {
  SweepSpec spec;
  spec.variant = Variant::MeasureAtom;
  spec.b_values = linear_range(0.05, 0.95, 0.01);
  return spec;
}

double fidelity_crossing(double threshold, double gt, double lo, double hi) {
  auto f = [&](double b) { return fidelity_formula_A(b, gt) - threshold; };
  if (f(lo) * f(hi) > 0.0) throw Error(ErrorKind::InvalidParams, "threshold not bracketed");
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

TimingBudget timing_budget(double g, double radiative_time_s, double cavity_decay_time_s,
                           std::size_t n_interactions) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(g) || !positive(radiative_time_s) || !positive(cavity_decay_time_s) || n_interactions == 0)
    throw Error(ErrorKind::InvalidParams, "timing inputs must be positive");
  TimingBudget budget;
  budget.g = g;
  budget.radiative_time_s = radiative_time_s;
  budget.cavity_decay_time_s = cavity_decay_time_s;
  budget.interaction_time_s = kMagicPhase / g;
  budget.total_time_s = static_cast<double>(n_interactions) * budget.interaction_time_s;
  budget.feasible = budget.total_time_s < std::min(radiative_time_s, cavity_decay_time_s);
  return budget;
}

}  // namespace cavity_swap
