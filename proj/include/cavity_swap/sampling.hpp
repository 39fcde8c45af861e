#pragma once

#include <random>
#include <string_view>

#include "cavity_swap/qstate.hpp"

namespace cavity_swap {

/// Normalized state with i.i.d. Gaussian real and imaginary parts.
StateVector random_state(const SystemLayout& layout, std::mt19937_64& rng);

/// As random_state, but with |e, d-1> of the given pair left empty so that
/// resonant evolution stays inside the truncated space.
StateVector random_leak_free_state(const SystemLayout& layout, std::string_view atom_label,
                                   std::string_view cavity_label, std::mt19937_64& rng);

}  // namespace cavity_swap
