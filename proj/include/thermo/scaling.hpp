#pragma once

// Scaled gases λA, extensive/intensive classification, constraint removal and
// the maximum entropy split.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "thermo/ideal_gas.hpp"

namespace thermo {

/// Positive rational scale factor, kept in lowest terms.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Throws NonPositiveScale unless num/den > 0.
  static Rational of(std::int64_t num, std::int64_t den = 1);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Model of λA: n → λn, σ0 → (p0, λV0), U0 → λU0, S0 → λS0. Pressure is
/// intensive, volume extensive.
GasModel scaled_model(const GasModel& base, double lambda);

struct ScaledGas {
  GasModel base;
  Rational lambda;
  GasModel model;

  GasState scale_state(const GasState& s) const { return {s.p, lambda.value() * s.V}; }
};

/// Throws NonPositiveScale for λ <= 0.
ScaledGas scale(const GasModel& base, Rational lambda);

struct UVState {
  double U = 0.0;
  double V = 0.0;
};

UVState to_uv(const GasModel& g, const GasState& s);
/// Throws OutOfDomain unless U − U0 > 0 and V > 0.
GasState from_uv(const GasModel& g, const UVState& s);
/// Closed-form S(U, V).
double entropy_uv(const GasModel& g, const UVState& s);

enum class Scaling { Extensive, Intensive, Neither };
std::string_view to_string(Scaling s) noexcept;

using StateProbe = std::function<double(const GasModel&, const GasState&)>;

/// Compares X on λA at (p, λV) against X on A at (p, V) for λ ∈ {1/2, 2, 3}
/// over the given states (a small default grid when empty).
Scaling classify_variable(const StateProbe& probe, const GasModel& base, std::vector<GasState> states = {},
                          double rel = 1e-9);

struct ConstraintRemoval {
  Process process;
  UVState part1, part2, total;
};

/// Lets two scaled copies of one base gas share energy and volume. Each part
/// ends with the share λ_i/(λ1+λ2) of the totals; zero work on both. Input
/// that is already proportional yields the identity. Throws IncompatibleBases.
ConstraintRemoval remove_constraint(const ScaledGas& g1, AtomId a1, const UVState& s1, const ScaledGas& g2,
                                    AtomId a2, const UVState& s2);

enum class MaxEntropyMode {
  /// Nelder–Mead over both the energy and the volume share.
  Full,
  /// Volume split fixed proportional; golden section over the energy share.
  EnergyOnly,
};

struct MaxEntropyResult {
  UVState part1, part2;
  double s_max = 0.0;
  int iterations = 0;
};

/// Maximizes S_{λA}(U′, V′) + S_{(1−λ)A}(U − U′, V − V′) with both parts
/// kept above 1e-9 of the totals. Throws OptimizerFailed, InvalidArgument.
MaxEntropyResult max_entropy_split(const GasModel& base, double lambda, const UVState& total,
                                   MaxEntropyMode mode = MaxEntropyMode::Full);

using UVObjective = std::function<double(double U, double V)>;

struct ConcavityReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
};

struct UVBox {
  double u_lo, u_hi, v_lo, v_hi;
};

/// S(λx + (1−λ)y) − λS(x) − (1−λ)S(y) over random pairs in the box and
/// λ ∈ {1/4, 1/2, 3/4}; a violation is a slack below −slack_tol.
ConcavityReport check_concavity(const UVObjective& s, const UVBox& box, std::size_t pairs, std::uint64_t seed,
                                double slack_tol = 1e-10);

}  // namespace thermo
