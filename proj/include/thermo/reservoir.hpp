#pragma once

#include <map>
#include <mutex>

#include "thermo/process.hpp"
#include "thermo/system.hpp"

namespace thermo {

/// A heat reservoir atom. Its state is a single energy value and every
/// process generated for it depends on energy differences only.
struct Reservoir {
  AtomId atom;
  double theta = 1.0;
};

Reservoir add_reservoir(World& world, double theta);
Reservoir reservoir_of(const World& world, AtomId atom);

/// Hands out one reservoir atom per theta value, creating it on first use.
/// Safe to share between threads.
class ReservoirBank {
 public:
  explicit ReservoirBank(World& world) : world_(&world) {}

  Reservoir at(double theta);
  World& world() const noexcept { return *world_; }

 private:
  World* world_;
  std::mutex mutex_;
  std::map<double, Reservoir> cache_;
};

/// Checks the reservoir axioms on a generated process: W_R(p) >= -tol, and
/// `regenerate` (a constructor parametrized by the reservoir's initial
/// energy) yields identical works and non-reservoir states when shifted by
/// `shift`.
struct ReservoirAxiomReport {
  bool work_nonnegative = true;
  bool translation_invariant = true;
};
ReservoirAxiomReport check_reservoir_axioms(const Reservoir& r,
                                            const std::function<Process(double e0)>& regenerate,
                                            double e0, double shift, double tol);

}  // namespace thermo
