#pragma once

// Data-parallel kernels over grids of states and reservoir pairs. Every
// kernel has a serial path that is the reference for the OpenMP path; both
// return results in input order.

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include "thermo/carnot.hpp"
#include "thermo/energy.hpp"
#include "thermo/entropy.hpp"

namespace thermo {

enum class Execution { Serial, Parallel };

/// out[i] = f(i) for i < n. Exceptions thrown by f are rethrown on the
/// calling thread (the first one raised wins).
template <class F>
auto map_indexed(std::size_t n, F&& f, Execution exec) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using T = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<T>> slots(n);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(f(i));
  } else {
    std::exception_ptr error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
      } catch (...) {
#pragma omp critical(thermo_map_indexed_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// n×n states with p and V log-spaced over [lo, hi], p varying fastest.
std::vector<GasState> log_grid(double lo, double hi, std::size_t n);

std::vector<double> energy_grid(const EnergyLedger& ledger, AtomId gas, const std::vector<GasState>& states,
                                Execution exec);

std::vector<double> entropy_grid(const EntropyLedger& ledger, AtomId gas, const std::vector<GasState>& states,
                                 std::optional<double> theta_prime, Execution exec);

/// −q1/q2 of reversible engines between fresh reservoirs at (θ1, θ2).
std::vector<double> carnot_ratios(World& world, const std::vector<std::pair<double, double>>& thetas,
                                  const CarnotOptions& opts, Execution exec);

int max_threads();

}  // namespace thermo
