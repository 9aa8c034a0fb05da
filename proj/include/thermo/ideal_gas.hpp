#pragma once

// The ideal gas: type-1 (isochoric friction), type-2 (adiabat) and type-3
// (isothermal reservoir contact) families, the connection templates, and the
// closed forms for U, S and T.
//
// The closed forms in namespace `oracle` are reference values for tests and
// reports. The energy and entropy ledgers never call them.

#include <array>
#include <functional>
#include <vector>

#include "thermo/quasistatic.hpp"
#include "thermo/reservoir.hpp"

namespace thermo {

struct Gas {
  AtomId atom;
  GasModel model;
};

Gas add_gas(World& world, const GasModel& model = {});
Gas gas_of(const World& world, AtomId atom);

namespace ideal_gas {

inline constexpr double kStateFloor = 1e-12;
inline constexpr double kIsothermTolerance = 1e-9;

/// Throws DomainError unless p, V > kStateFloor.
void check_state(const GasState& s);

/// p V^γ, constant along type-2 curves.
double adiabat_invariant(const GasModel& g, const GasState& s);
/// pV / (nR): the reservoir parameter of the isotherm through s.
double isotherm_theta(const GasModel& g, const GasState& s);

/// Constant-volume pressure rise p → p2 (p2 >= p), δW = V dp / (γ-1).
/// Irreversible. Throws PressureDecrease for p2 < p.
QuasistaticFamily type1(const Gas& gas, const GasState& from, double p2);

/// Adiabat along pV^γ = const to volume V2, δW = -p dV. Reversible.
QuasistaticFamily type2(const Gas& gas, const GasState& from, double V2);

/// Adiabat ending exactly at `to`; throws PreconditionNotMet unless both
/// states share the adiabat within kIsothermTolerance (relative).
QuasistaticFamily type2_to(const Gas& gas, const GasState& from, const GasState& to);

/// Isothermal contact with r along pV = nRΘ to volume V2, on gas ∨ reservoir.
/// Gas work -nRΘ ln(V2/V1), heat into the gas +nRΘ ln(V2/V1), reservoir work
/// zero and reservoir energy shifted by minus that heat. Throws OffIsotherm.
QuasistaticFamily type3(const Gas& gas, const Reservoir& r, const GasState& from, double reservoir_energy,
                        double V2);

/// Same isothermal path as a type-3 expansion, but driven by friction on the
/// isolated gas: a work process on the gas alone with a different work form.
QuasistaticFamily friction_isotherm(const Gas& gas, const GasState& from, double V2);

/// Direct isochoric conduction: heat q > 0 flows from gas a to gas b. Zero
/// work on both. Throws PreconditionNotMet when a is not hotter than b in
/// the model sense (larger pV/nR) or when q would drive a pressure to zero.
Process conduction(const Gas& a, const GasState& sa, const Gas& b, const GasState& sb, double q);

/// Isochoric conduction between a gas and a reservoir moving the gas to
/// pressure p2. Zero work on both; the reservoir absorbs the gas's energy
/// change. Throws PreconditionNotMet when heat would flow from cold to hot.
Process reservoir_conduction(const Gas& gas, const GasState& from, double p2, const Reservoir& r,
                             double reservoir_energy);

/// Work process on the gas linking σ1 and σ2: type 2 to V of the higher-
/// adiabat state, then type 1 up to its pressure. Runs from the state with the
/// smaller pV^γ to the other; a pure type-2 segment when they share an
/// adiabat.
QuasistaticFamily connect_family(const Gas& gas, const GasState& s1, const GasState& s2);
Process connect(const Gas& gas, const GasState& s1, const GasState& s2);

/// Reversible type 2 → type 3 at r.theta → type 2 from σ1 to σ2. The middle
/// segment is the only one exchanging heat.
std::vector<QuasistaticFamily> connect_reversible(const Gas& gas, const GasState& s1,
                                                  const GasState& s2, const Reservoir& r,
                                                  double reservoir_energy = 0.0);

/// Unit tangents of the V = const and adiabat families through s, and of the
/// adiabat and isotherm families, in (p, V) coordinates.
std::array<std::array<double, 2>, 2> first_law_tangents(const Gas& gas, const GasState& s);
std::array<std::array<double, 2>, 2> entropy_tangents(const Gas& gas, const GasState& s);

using TangentPair = std::array<std::array<double, 2>, 2>;
using TangentConstructor = std::function<TangentPair(const Gas&, const GasState&)>;

struct QsPostulateReport {
  std::size_t states_checked = 0;
  std::size_t pairs_checked = 0;
  /// States where |det| of the normalized tangents fell below the threshold.
  std::vector<GasState> dependent;
  /// Pairs the connect template failed to join.
  std::vector<std::pair<GasState, GasState>> unconnected;
  double min_determinant = 0.0;

  bool passed() const { return dependent.empty() && unconnected.empty(); }
};

/// At each state, every tangent constructor must give two linearly
/// independent directions; every pair must be joined by `connect` with
/// matching endpoints. Defaults to first_law_tangents and entropy_tangents.
QsPostulateReport check_qs_postulates(const Gas& gas, const std::vector<GasState>& states,
                                      const std::vector<std::pair<GasState, GasState>>& pairs,
                                      std::vector<TangentConstructor> tangents = {}, double threshold = 1e-8);

namespace oracle {

/// U = pV/(γ-1) + U0.
double energy(const GasModel& g, const GasState& s);
/// S = nR(ln(p/p0)/(γ-1) + γ/(γ-1) ln(V/V0)) + S0.
double entropy(const GasModel& g, const GasState& s);
/// T = pV/(nR).
double temperature(const GasModel& g, const GasState& s);
/// U(S, V) reconstructed from the two closed forms above.
double energy_from_entropy(const GasModel& g, double S, double V);
/// (p, V) from (U, V).
GasState from_energy_volume(const GasModel& g, double U, double V);

}  // namespace oracle

}  // namespace ideal_gas
}  // namespace thermo
