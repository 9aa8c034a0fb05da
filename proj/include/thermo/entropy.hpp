#pragma once

// Heat-flow temperatures, Clausius sums, the entropy ledger and the Entropy
// Theorem check.

#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "thermo/carnot.hpp"
#include "thermo/energy.hpp"

namespace thermo {

/// Closed interval of absolute temperatures; a singleton has lo == hi.
struct TemperatureInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool singleton() const { return lo == hi; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

/// Temperatures T at which the heat Q_{S2}(p) of a work process on s1 ∨ s2
/// can be rerouted through a pair of reservoirs at T. Reversible isothermal
/// contact gives the reservoir's temperature; direct conduction gives the
/// interval between the contact temperatures of the two bodies. Throws
/// ZeroHeat, NoTemperature, NotWorkProcess, Overlap.
TemperatureInterval assign_heat_temperature(const EnergyLedger& energy, const TemperatureScale& scale,
                                            const System& s1, const System& s2, const Process& p);

/// A step of a sequence acting on a probe system. Pure work steps carry
/// q = 0 and need no temperature.
struct HeatFlowRecord {
  Process process;
  double q = 0.0;  // heat into the probe system
  std::optional<double> temperature;
};

/// Σ q_i / T_i. On the probe's atoms each step must start where the previous
/// one ended and the last must end where the first started (NotCyclic).
/// Records with q != 0 need a temperature (UnassignedTemperature). An empty
/// list sums to zero.
double clausius_sum(const System& probe, const std::vector<HeatFlowRecord>& records,
                    double state_tol = default_tolerances().state);

/// Entropy per atom from reversible reservoir contacts. Gas: S0 + Q/T along the
/// adiabat–isotherm–adiabat template from the reference state. Reservoir:
/// S0 + Q/T through a Carnot engine against a clone with the machine
/// eliminated as a catalyst. Composite systems sum their atoms.
class EntropyLedger {
 public:
  EntropyLedger(World& world, const EnergyLedger& energy, const TemperatureScale& scale);

  void set_reference(AtomId atom, StateValue sigma0, double s0);
  std::pair<StateValue, double> reference(AtomId atom) const;

  /// theta_prime selects the intermediate isotherm for gas atoms; default is
  /// the reference reservoir parameter.
  double entropy(AtomId atom, const StateValue& sigma, std::optional<double> theta_prime = {}) const;
  double entropy(const System& s, const JointState& sigma, std::optional<double> theta_prime = {}) const;

  /// Records of the reversible reservoir contacts used by `entropy`, in order.
  std::vector<HeatFlowRecord> sequence(AtomId atom, const StateValue& from, const StateValue& to,
                                       std::optional<double> theta_prime = {}) const;

  const EnergyLedger& energy() const noexcept { return *energy_; }
  const TemperatureScale& scale() const noexcept { return *scale_; }

 private:
  World* world_;
  mutable ReservoirBank bank_;
  const EnergyLedger* energy_;
  const TemperatureScale* scale_;
  mutable std::shared_mutex mutex_;
  std::map<AtomId, std::pair<StateValue, double>> references_;
  mutable std::map<std::pair<AtomId, std::vector<double>>, double> memo_;
};

struct EntropyVerdict {
  bool pass = true;
  double delta = 0.0;
  bool reversible = false;
};

/// ΔS_S(p) >= −tol, and |ΔS| <= tol when p carries a reverse witness.
/// Throws NotWorkProcess.
EntropyVerdict check_entropy_theorem(const EntropyLedger& ledger, const System& s, const Process& p,
                                     double tol = default_tolerances().law);

}  // namespace thermo
