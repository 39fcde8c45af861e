#include "cavity_swap/sampling.hpp"

namespace cavity_swap {

StateVector random_state(const SystemLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Amplitudes amps(layout.total_dimension());
  for (auto& z : amps) z = {normal(rng), normal(rng)};
  return make_state(layout, std::move(amps));
}

StateVector random_leak_free_state(const SystemLayout& layout, std::string_view atom_label,
                                   std::string_view cavity_label, std::mt19937_64& rng) {
  const std::size_t atom = layout.position(atom_label);
  const std::size_t cavity = layout.position(cavity_label);
  const std::size_t top = layout.subsystems()[cavity].dimension - 1;
  std::normal_distribution<double> normal;
  Amplitudes amps(layout.total_dimension());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (layout.local_index(i, atom) == kExcited && layout.local_index(i, cavity) == top) continue;
    amps[i] = {normal(rng), normal(rng)};
  }
  return make_state(layout, std::move(amps));
}

}  // namespace cavity_swap
