#include "thermo/reservoir.hpp"

#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

Reservoir add_reservoir(World& world, double theta) {
  return {world.add_reservoir(ReservoirModel{theta}), theta};
}

Reservoir reservoir_of(const World& world, AtomId atom) { return {atom, world.reservoir_theta(atom)}; }

Reservoir ReservoirBank::at(double theta) {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(theta);
  if (it != cache_.end()) return it->second;
  const auto r = add_reservoir(*world_, theta);
  cache_.emplace(theta, r);
  return r;
}

ReservoirAxiomReport check_reservoir_axioms(const Reservoir& r,
                                            const std::function<Process(double e0)>& regenerate,
                                            double e0, double shift, double tol) {
  ReservoirAxiomReport report;
  const auto base = regenerate(e0);
  const auto moved = regenerate(e0 + shift);
  report.work_nonnegative = base.work(r.atom) >= -tol && moved.work(r.atom) >= -tol;

  if (base.entries().size() != moved.entries().size()) {
    report.translation_invariant = false;
    return report;
  }
  for (const auto& [atom, e] : base.entries()) {
    auto it = moved.entries().find(atom);
    if (it == moved.entries().end() || std::fabs(it->second.work - e.work) > tol) {
      report.translation_invariant = false;
      break;
    }
    if (atom == r.atom) {
      const double d0 = std::get<ReservoirState>(e.final.value).E - std::get<ReservoirState>(e.initial.value).E;
      const double d1 = std::get<ReservoirState>(it->second.final.value).E -
                        std::get<ReservoirState>(it->second.initial.value).E;
      if (std::fabs(d0 - d1) > tol * std::max(1.0, std::fabs(shift))) report.translation_invariant = false;
    } else if (!same_state(e.initial.value, it->second.initial.value, tol) ||
               !same_state(e.final.value, it->second.final.value, tol)) {
      report.translation_invariant = false;
    }
  }
  return report;
}

}  // namespace thermo
