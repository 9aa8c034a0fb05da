#include "thermo/batch.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace thermo {

std::vector<GasState> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    axis[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  std::vector<GasState> out;
  out.reserve(n * n);
  for (double V : axis) {
    for (double p : axis) out.push_back({p, V});
  }
  return out;
}

std::vector<double> energy_grid(const EnergyLedger& ledger, AtomId gas, const std::vector<GasState>& states,
                                Execution exec) {
  return map_indexed(states.size(), [&](std::size_t i) { return ledger.internal_energy(gas, states[i]); }, exec);
}

std::vector<double> entropy_grid(const EntropyLedger& ledger, AtomId gas, const std::vector<GasState>& states,
                                 std::optional<double> theta_prime, Execution exec) {
  return map_indexed(
      states.size(), [&](std::size_t i) { return ledger.entropy(gas, states[i], theta_prime); }, exec);
}

std::vector<double> carnot_ratios(World& world, const std::vector<std::pair<double, double>>& thetas,
                                  const CarnotOptions& opts, Execution exec) {
  return map_indexed(
      thetas.size(),
      [&](std::size_t i) {
        const auto r1 = add_reservoir(world, thetas[i].first);
        const auto r2 = add_reservoir(world, thetas[i].second);
        return temperature_ratio(world, r1, r2, opts);
      },
      exec);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace thermo
