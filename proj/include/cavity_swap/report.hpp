#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "cavity_swap/analysis.hpp"

namespace cavity_swap {

inline constexpr const char* kSweepCsvHeader =
    "b,k,gt,variant,outcome_probability,fidelity,useful_probability,fidelity_formula,"
    "probability_formula,abs_deviation";

/// Shortest decimal that round-trips to the same double.
std::string format_exact(double value);

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);
nlohmann::json sweep_json(std::span<const SweepRecord> records);
nlohmann::json result_json(const ProtocolResult& result);

/// Static SVG line chart of simulated fidelity against b.
void write_fidelity_svg(std::ostream& out, std::span<const SweepRecord> records);

}  // namespace cavity_swap
