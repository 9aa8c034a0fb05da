#pragma once

// Carnot engines between two reservoirs, the temperature ratio τ, absolute
// temperature, and second-law verdicts.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "thermo/ideal_gas.hpp"
#include "thermo/reservoir.hpp"

namespace thermo {

struct CarnotOptions {
  /// Volume ratio of the isotherm at r1.
  double volume_ratio = 2.0;
  double v_start = 1.0;
  double gamma = 5.0 / 3.0;
  double R = 1.0;
  double e1 = 0.0;
  double e2 = 0.0;
  /// > 1 inserts a type-1 pressure rise by this factor after the r1 isotherm,
  /// making the cycle irreversible.
  double friction_factor = 1.0;
};

struct CarnotSegment {
  std::string label;
  double work = 0.0;  // into the machine
  double heat = 0.0;  // into the machine
};

struct CarnotRun {
  Reservoir r1, r2;
  Gas machine;
  Process process;
  double q1 = 0.0;  // heat into r1
  double q2 = 0.0;  // heat into r2
  double w = 0.0;   // work into the machine
  bool reversible = true;
  std::vector<CarnotSegment> segments;
};

/// Four-segment cycle on a fresh gas machine: isotherm at r1, adiabat,
/// isotherm at r2, adiabat back. The machine's n is solved so that the heat
/// into r1 equals q_target. q_target < 0 runs the engine direction (r1 gives
/// heat). Throws SameReservoir when r1 and r2 are the same atom.
CarnotRun build_carnot(World& world, const Reservoir& r1, const Reservoir& r2, double q_target,
                       const CarnotOptions& opts = {});

/// −q1/q2 of a reversible run with q2 > 0. A reservoir paired with itself is
/// compared against a fresh clone.
double temperature_ratio(World& world, const Reservoir& r1, const Reservoir& r2,
                         const CarnotOptions& opts = {});

/// T = τ(r, ref) · t_ref. Throws InvalidArgument unless t_ref > 0.
double absolute_temperature(World& world, const Reservoir& r, const Reservoir& ref, double t_ref);

/// |τ(r1, r2) − 1| <= 1e-6.
bool same_temperature(World& world, const Reservoir& r1, const Reservoir& r2);

struct SecondLawVerdict {
  bool pass = true;
  double work = 0.0;         // W_S(p)
  double reservoir_heat = 0.0;  // Q_R(p) = W_S(p)
};

/// Postulate check for a work process on r ∨ s, cyclic on s: W_S(p) >= −tol.
/// Throws PreconditionNotMet when p is not such a process.
SecondLawVerdict check_second_law(const Reservoir& r, const System& s, const Process& p,
                                  double tol = default_tolerances().law);

/// Absolute temperature of reservoirs relative to a fixed reference, memoized
/// per reservoir parameter. Gas temperatures are looked up through a
/// reservoir with matching parameter.
class TemperatureScale {
 public:
  /// Reference reservoir parameter θ_ref mapped to absolute temperature t_ref.
  TemperatureScale(World& world, double theta_ref = 1.0, double t_ref = 1.0);

  double of(const Reservoir& r) const;
  double of_theta(double theta) const;
  const Reservoir& reference() const noexcept { return ref_; }
  double t_ref() const noexcept { return t_ref_; }
  World& world() const noexcept { return *world_; }

 private:
  World* world_;
  Reservoir ref_;
  double t_ref_;
  mutable std::mutex mutex_;
  mutable std::map<double, double> memo_;
};

}  // namespace thermo
