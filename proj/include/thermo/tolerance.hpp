#pragma once

#include <algorithm>
#include <optional>
#include <string_view>

namespace thermo {

/// Tolerance tiers used across the engine.
///
/// `state` governs endpoint equality when concatenating processes (applied as
/// |a-b| <= state * max(1, |a|, |b|)). `quadrature` is the absolute target of
/// the path integrator. `first_law_rel`/`first_law_abs` bound disagreement
/// between work totals of different connecting paths. `law` is the slack
/// granted to inequality verdicts (second law, entropy theorem, catalycity).
struct Tolerances {
  double state = 1e-12;
  double quadrature = 1e-10;
  double first_law_rel = 1e-9;
  double first_law_abs = 1e-12;
  double law = 1e-9;
};

/// Defaults, with THERMOKERNEL_TOL applied once on first call. The variable
/// holds either a single number (replaces `law`) or a comma separated list of
/// `tier=value` pairs, e.g. `state=1e-11,law=1e-8`.
const Tolerances& default_tolerances();

/// Parses a THERMOKERNEL_TOL style override on top of `base`. Returns nullopt
/// when the text is malformed.
std::optional<Tolerances> parse_tolerance_override(std::string_view text, Tolerances base);

inline bool nearly_equal(double a, double b, double rel_tol) {
  const double scale = std::max({1.0, a < 0 ? -a : a, b < 0 ? -b : b});
  const double d = a - b;
  return (d < 0 ? -d : d) <= rel_tol * scale;
}

/// max(rel * max(|a|,|b|), abs) agreement used by the first-law checker.
bool agree(double a, double b, double rel, double abs);

}  // namespace thermo
