#include <chrono>
#include <cstdio>
#include <string>

#include "thermo/batch.hpp"
#include "thermo/random.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-14s serial %8.4fs  parallel %8.4fs  speedup %5.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 20;
  std::printf("threads: %d, grid: %zux%zu\n", thermo::max_threads(), n, n);
  const auto states = thermo::log_grid(0.25, 4.0, n);

  auto energy = [&](thermo::Execution exec) {
    thermo::World world;
    const auto gas = world.add(thermo::GasModel{});
    const thermo::EnergyLedger ledger(world);
    return seconds([&] { thermo::energy_grid(ledger, gas, states, exec); });
  };
  report("energy_grid", energy(thermo::Execution::Serial), energy(thermo::Execution::Parallel));

  auto entropy = [&](thermo::Execution exec) {
    thermo::World world;
    const auto gas = world.add(thermo::GasModel{});
    const thermo::EnergyLedger e(world);
    const thermo::TemperatureScale scale(world);
    const thermo::EntropyLedger s(world, e, scale);
    return seconds([&] { thermo::entropy_grid(s, gas, states, std::nullopt, exec); });
  };
  report("entropy_grid", entropy(thermo::Execution::Serial), entropy(thermo::Execution::Parallel));

  thermo::Rng rng;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < 10 * n; ++i) pairs.emplace_back(rng.log_uniform(0.5, 5.0), rng.log_uniform(0.5, 5.0));
  for (auto& [a, b] : pairs) {
    if (a == b) b *= 1.5;
  }
  auto carnot = [&](thermo::Execution exec) {
    thermo::World world;
    return seconds([&] { thermo::carnot_ratios(world, pairs, {}, exec); });
  };
  report("carnot_ratios", carnot(thermo::Execution::Serial), carnot(thermo::Execution::Parallel));
  return 0;
}
