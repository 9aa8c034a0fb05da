#pragma once

#include <variant>

namespace thermo {

struct GasState {
  double p = 1.0;
  double V = 1.0;

  friend bool operator==(const GasState&, const GasState&) = default;
};

/// Parameters of one ideal-gas atom. `U0` and `S0` are the additive constants
/// of the internal energy and entropy; `p0`, `V0` the reference state.
struct GasModel {
  double n = 1.0;
  double R = 1.0;
  double gamma = 5.0 / 3.0;
  GasState sigma0{1.0, 1.0};
  double U0 = 0.0;
  double S0 = 0.0;

  /// f/2 = 1/(gamma-1): prefactor of V dp in constant-volume work.
  double dof_half() const { return 1.0 / (gamma - 1.0); }
  double nR() const { return n * R; }

  friend bool operator==(const GasModel&, const GasModel&) = default;
};

inline constexpr double kGasConstantSI = 8.314462618;

/// Reservoir parameter: the isotherm invariant pV/(nR) of gases that exchange
/// heat with it reversibly. Absolute temperature is derived, never read off.
struct ReservoirModel {
  double theta = 1.0;

  friend bool operator==(const ReservoirModel&, const ReservoirModel&) = default;
};

struct AbstractModel {
  int dim = 1;

  friend bool operator==(const AbstractModel&, const AbstractModel&) = default;
};

using ModelBinding = std::variant<GasModel, ReservoirModel, AbstractModel>;

}  // namespace thermo
