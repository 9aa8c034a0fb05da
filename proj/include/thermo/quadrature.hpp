#pragma once

#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

struct QuadratureOptions {
  double tol = 1e-10;  // absolute
  int max_depth = 30;
  int min_depth = 3;
};

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, const QuadratureOptions& opts, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if ((depth >= opts.min_depth && std::fabs(delta) <= 15.0 * tol) || !std::isfinite(delta)) {
    if (!std::isfinite(delta)) converged = false;
    return left + right + delta / 15.0;
  }
  if (depth >= opts.max_depth) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opts, converged) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opts, converged);
}

}  // namespace detail

/// Adaptive composite Simpson with Richardson correction on [a, b]. The
/// integrand must be smooth on the interval; split at kinks before calling.
/// Throws ToleranceNotMet when a subinterval still misses its share of the
/// tolerance at max_depth.
template <class F>
double integrate_adaptive(const F& f, double a, double b, QuadratureOptions opts = {}) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool converged = true;
  const double value =
      detail::simpson_step(f, a, b, fa, fm, fb, whole, opts.tol, 0, opts, converged);
  if (!converged) fail(ErrorKind::ToleranceNotMet, "adaptive Simpson did not reach the tolerance");
  return value;
}

}  // namespace thermo
