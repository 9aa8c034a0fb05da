#pragma once

// Randomized invariant suites behind `thermokernel verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thermo/batch.hpp"
#include "thermo/io.hpp"
#include "thermo/random.hpp"

namespace thermo {

struct SuiteReport {
  std::string suite;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // at most a handful

  bool passed() const noexcept { return failures == 0 && checks > 0; }
};

/// first-law, second-law, carnot, clausius, entropy-theorem, max-entropy, scaling.
const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Throws InvalidArgument for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed,
                      Execution exec = Execution::Parallel);

/// Independent per-case seed derived from a run seed (splitmix64).
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

io::Json to_json(const SuiteReport& r);

}  // namespace thermo
