#pragma once

// Closed forms computed directly in the tests, independent of the library.

#include <cmath>

namespace oracle {

inline double gas_U(double p, double V, double gamma = 5.0 / 3.0, double U0 = 0.0) {
  return p * V / (gamma - 1.0) + U0;
}

inline double gas_S(double p, double V, double nR = 1.0, double gamma = 5.0 / 3.0, double p0 = 1.0,
                    double V0 = 1.0, double S0 = 0.0) {
  const double cv = 1.0 / (gamma - 1.0);
  return nR * (cv * std::log(p / p0) + (cv + 1.0) * std::log(V / V0)) + S0;
}

inline double gas_T(double p, double V, double nR = 1.0) { return p * V / nR; }

/// Pressure after an adiabat from (p, V) to V2.
inline double adiabat_p(double p, double V, double V2, double gamma = 5.0 / 3.0) {
  return p * std::pow(V / V2, gamma);
}

/// -∫ p dV along pV^γ = const.
inline double adiabat_work(double p, double V, double V2, double gamma = 5.0 / 3.0) {
  return (adiabat_p(p, V, V2, gamma) * V2 - p * V) / (gamma - 1.0);
}

/// -∫ p dV along pV = c.
inline double isotherm_work(double c, double V1, double V2) { return -c * std::log(V2 / V1); }

/// Heat into a gas on an isotherm at nRΘ = c.
inline double isotherm_heat(double c, double V1, double V2) { return c * std::log(V2 / V1); }

/// Reversible Carnot between θ1 and θ2: −q1/q2.
inline double carnot_ratio(double theta1, double theta2) { return theta1 / theta2; }

/// S(U, V) in closed form for U0 = 0, σ0 = (1, 1), S0 = 0.
inline double entropy_UV(double U, double V, double nR = 1.0, double gamma = 5.0 / 3.0) {
  const double p = U * (gamma - 1.0) / V;
  return gas_S(p, V, nR, gamma);
}

}  // namespace oracle
