#include "thermo/scaling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

#include "thermo/errors.hpp"
#include "thermo/random.hpp"

namespace thermo {

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0 || (num > 0) != (den > 0) || num == 0) {
    fail(ErrorKind::NonPositiveScale, "scale factors must be positive");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

GasModel scaled_model(const GasModel& base, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::NonPositiveScale, "scale factors must be positive");
  GasModel m = base;
  m.n *= lambda;
  m.sigma0.V *= lambda;
  m.U0 *= lambda;
  m.S0 *= lambda;
  return m;
}

ScaledGas scale(const GasModel& base, Rational lambda) {
  const auto l = Rational::of(lambda.num, lambda.den);
  return {base, l, scaled_model(base, l.value())};
}

UVState to_uv(const GasModel& g, const GasState& s) { return {ideal_gas::oracle::energy(g, s), s.V}; }

GasState from_uv(const GasModel& g, const UVState& s) {
  if (!(s.U - g.U0 > 0.0) || !(s.V > 0.0)) fail(ErrorKind::OutOfDomain, "(U, V) outside the gas domain");
  return ideal_gas::oracle::from_energy_volume(g, s.U, s.V);
}

double entropy_uv(const GasModel& g, const UVState& s) { return ideal_gas::oracle::entropy(g, from_uv(g, s)); }

std::string_view to_string(Scaling s) noexcept {
  switch (s) {
    case Scaling::Extensive:
      return "extensive";
    case Scaling::Intensive:
      return "intensive";
    case Scaling::Neither:
      return "neither";
  }
  return "neither";
}

Scaling classify_variable(const StateProbe& probe, const GasModel& base, std::vector<GasState> states, double rel) {
  if (states.empty()) states = {{0.5, 0.5}, {1.0, 2.0}, {3.0, 0.7}, {1.3, 1.1}};
  bool extensive = true;
  bool intensive = true;
  for (double lambda : {0.5, 2.0, 3.0}) {
    const auto scaled = scaled_model(base, lambda);
    for (const auto& s : states) {
      const double x = probe(base, s);
      const double y = probe(scaled, {s.p, lambda * s.V});
      extensive = extensive && nearly_equal(y, lambda * x, rel);
      intensive = intensive && nearly_equal(y, x, rel);
    }
  }
  if (extensive) return Scaling::Extensive;
  if (intensive) return Scaling::Intensive;
  return Scaling::Neither;
}

ConstraintRemoval remove_constraint(const ScaledGas& g1, AtomId a1, const UVState& s1, const ScaledGas& g2,
                                    AtomId a2, const UVState& s2) {
  if (!(g1.base == g2.base)) fail(ErrorKind::IncompatibleBases, "parts are not scalings of one gas");
  const double l1 = g1.lambda.value();
  const double l2 = g2.lambda.value();
  const double f1 = l1 / (l1 + l2);
  const UVState total{s1.U + s2.U, s1.V + s2.V};
  const UVState p1{f1 * total.U, f1 * total.V};
  const UVState p2{total.U - p1.U, total.V - p1.V};
  const auto i1 = from_uv(g1.model, s1);
  const auto i2 = from_uv(g2.model, s2);
  const bool proportional = nearly_equal(s1.U, p1.U, 1e-12) && nearly_equal(s1.V, p1.V, 1e-12);
  if (proportional) {
    return {make_identity(System{a1, a2}, JointState{{a1, i1}, {a2, i2}}), s1, s2, total};
  }
  Process p({{{a1, i1}, {a1, from_uv(g1.model, p1)}, 0.0}, {{a2, i2}, {a2, from_uv(g2.model, p2)}, 0.0}},
            {"constraint-removal"});
  return {std::move(p), p1, p2, total};
}

namespace {

constexpr double kFloor = 1e-9;

struct SplitObjective {
  GasModel m1, m2;
  UVState total;

  // Returns -inf outside the admissible rectangle.
  double operator()(double x, double y) const {
    const UVState a{x * total.U, y * total.V};
    const UVState b{total.U - a.U, total.V - a.V};
    if (a.U - m1.U0 <= kFloor * total.U || b.U - m2.U0 <= kFloor * total.U) return -INFINITY;
    if (a.V <= kFloor * total.V || b.V <= kFloor * total.V) return -INFINITY;
    return entropy_uv(m1, a) + entropy_uv(m2, b);
  }
};

// ∂S/∂U = nR/(γ−1)/(U − U0) and ∂S/∂V = nR/V for the closed form.
double dS_dU(const GasModel& g, double U) { return g.nR() * g.dof_half() / (U - g.U0); }
double dS_dV(const GasModel& g, double V) { return g.nR() / V; }

// Bisection on a decreasing derivative over (lo, hi).
double root_of_decreasing(const std::function<double(double)>& d, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (d(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Refines an interior optimum of the separable objective by solving
// ∂F/∂x = 0 and ∂F/∂y = 0 on brackets around the optimizer's point.
std::pair<double, double> polish(const SplitObjective& f, double x, double y, double width) {
  const double lo_x = std::max(kFloor, x - width), hi_x = std::min(1.0 - kFloor, x + width);
  const double lo_y = std::max(kFloor, y - width), hi_y = std::min(1.0 - kFloor, y + width);
  auto dx = [&](double t) {
    return dS_dU(f.m1, t * f.total.U) - dS_dU(f.m2, (1.0 - t) * f.total.U);
  };
  auto dy = [&](double t) {
    return dS_dV(f.m1, t * f.total.V) - dS_dV(f.m2, (1.0 - t) * f.total.V);
  };
  if (!(dx(lo_x) > 0 && dx(hi_x) < 0 && dy(lo_y) > 0 && dy(hi_y) < 0)) return {x, y};
  return {root_of_decreasing(dx, lo_x, hi_x), root_of_decreasing(dy, lo_y, hi_y)};
}

MaxEntropyResult finish(const SplitObjective& f, double x, double y, int iterations) {
  MaxEntropyResult r;
  r.part1 = {x * f.total.U, y * f.total.V};
  r.part2 = {f.total.U - r.part1.U, f.total.V - r.part1.V};
  r.s_max = f(x, y);
  r.iterations = iterations;
  if (!std::isfinite(r.s_max)) fail(ErrorKind::OptimizerFailed, "optimizer left the admissible region");
  return r;
}

MaxEntropyResult golden_section(const SplitObjective& f, double y) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = kFloor;
  double b = 1.0 - kFloor;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c, y);
  double fd = f(d, y);
  int it = 0;
  for (; it < 500 && b - a > 1e-13; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c, y);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d, y);
    }
  }
  if (b - a > 1e-10) fail(ErrorKind::OptimizerFailed, "golden section did not converge");
  const double x = polish(f, 0.5 * (a + b), y, 1e-4).first;
  return finish(f, x, y, it);
}

MaxEntropyResult nelder_mead(const SplitObjective& f, double x0, double y0) {
  using P = std::array<double, 2>;
  auto value = [&](const P& p) { return -f(p[0], p[1]); };
  std::array<P, 3> s{P{x0, y0}, P{x0 + 0.1, y0}, P{x0, y0 + 0.1}};
  std::array<double, 3> v{value(s[0]), value(s[1]), value(s[2])};
  int it = 0;
  for (; it < 5000; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    const P best = s[idx[0]];
    const P mid = s[idx[1]];
    const P worst = s[idx[2]];
    const double vb = v[idx[0]], vm = v[idx[1]], vw = v[idx[2]];
    double diameter = 0.0;
    for (const auto& q : s) diameter = std::max(diameter, std::hypot(q[0] - best[0], q[1] - best[1]));
    if (diameter < 1e-11) break;
    const P c{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    auto along = [&](double t) { return P{c[0] + t * (worst[0] - c[0]), c[1] + t * (worst[1] - c[1])}; };
    const P r = along(-1.0);
    const double vr = value(r);
    P next;
    double vn;
    if (vr < vb) {
      const P e = along(-2.0);
      const double ve = value(e);
      next = ve < vr ? e : r;
      vn = std::min(ve, vr);
    } else if (vr < vm) {
      next = r;
      vn = vr;
    } else {
      const P k = vr < vw ? along(-0.5) : along(0.5);
      const double vk = value(k);
      if (vk < std::min(vr, vw)) {
        next = k;
        vn = vk;
      } else {
        for (int i : {idx[1], idx[2]}) {
          s[i] = {0.5 * (s[i][0] + best[0]), 0.5 * (s[i][1] + best[1])};
          v[i] = value(s[i]);
        }
        continue;
      }
    }
    s[idx[2]] = next;
    v[idx[2]] = vn;
  }
  if (it >= 5000) fail(ErrorKind::OptimizerFailed, "Nelder-Mead did not converge");
  const auto best = std::min_element(v.begin(), v.end()) - v.begin();
  const auto [x, y] = polish(f, s[best][0], s[best][1], 1e-4);
  return finish(f, x, y, it);
}

}  // namespace

MaxEntropyResult max_entropy_split(const GasModel& base, double lambda, const UVState& total, MaxEntropyMode mode) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidArgument, "split fraction must lie in (0, 1)");
  from_uv(base, total);
  const SplitObjective f{scaled_model(base, lambda), scaled_model(base, 1.0 - lambda), total};
  if (mode == MaxEntropyMode::EnergyOnly) return golden_section(f, lambda);
  // Two starts; the better end point wins.
  auto a = nelder_mead(f, 0.3, 0.3);
  auto b = nelder_mead(f, 0.6, 0.55);
  a.iterations += b.iterations;
  b.iterations = a.iterations;
  return a.s_max >= b.s_max ? a : b;
}

ConcavityReport check_concavity(const UVObjective& s, const UVBox& box, std::size_t pairs, std::uint64_t seed,
                                double slack_tol) {
  ConcavityReport report;
  report.min_slack = INFINITY;
  Rng rng(seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    const double u1 = rng.uniform(box.u_lo, box.u_hi), v1 = rng.uniform(box.v_lo, box.v_hi);
    const double u2 = rng.uniform(box.u_lo, box.u_hi), v2 = rng.uniform(box.v_lo, box.v_hi);
    for (double l : {0.25, 0.5, 0.75}) {
      const double slack = s(l * u1 + (1 - l) * u2, l * v1 + (1 - l) * v2) - l * s(u1, v1) - (1 - l) * s(u2, v2);
      ++report.samples;
      report.min_slack = std::min(report.min_slack, slack);
      if (slack < -slack_tol) ++report.violations;
    }
  }
  if (report.samples == 0) report.min_slack = 0.0;
  return report;
}

}  // namespace thermo
