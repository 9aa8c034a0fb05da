#include "thermo/ideal_gas.hpp"

#include <algorithm>
#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

Gas add_gas(World& world, const GasModel& model) { return {world.add_gas(model), model}; }

Gas gas_of(const World& world, AtomId atom) { return {atom, world.gas_model(atom)}; }

namespace ideal_gas {

namespace {

constexpr std::size_t kP = 0;
constexpr std::size_t kV = 1;

Point gas_point(const GasState& s) {
  Point x{};
  x[kP] = s.p;
  x[kV] = s.V;
  return x;
}

Chart gas_chart(AtomId atom) { return Chart({{atom, 2}}); }

// δW = -p dV on a chart whose gas block starts at `off`.
OneForm minus_p_dV(std::size_t off) {
  return [off](const Point& x, const Point& dx) { return -x[off + kP] * dx[off + kV]; };
}

// Adiabat from `from` to volume V2 with an exact endpoint `end`.
CurveSegment adiabat_segment(AtomId atom, double gamma, const GasState& from, const GasState& end) {
  const double L = std::log(end.V / from.V);
  const double K = from.p * std::pow(from.V, gamma);
  return {gas_chart(atom),
          [=](double mu) {
            if (mu <= 0.0) return gas_point(from);
            if (mu >= 1.0) return gas_point(end);
            const double V = from.V * std::exp(mu * L);
            return gas_point({K * std::pow(V, -gamma), V});
          },
          [=](double mu) {
            Point t{};
            const double V = mu >= 1.0 ? end.V : from.V * std::exp(mu * L);
            const double p = K * std::pow(V, -gamma);
            t[kP] = -gamma * p * L;
            t[kV] = V * L;
            return t;
          }};
}

QuasistaticFamily adiabat_family(const Gas& gas, const GasState& from, const GasState& end) {
  const auto seg = adiabat_segment(gas.atom, gas.model.gamma, from, end);
  std::map<AtomId, PiecewiseForm> work{{gas.atom, {minus_p_dV(0)}}};
  return QuasistaticFamily(Curve({seg}), std::move(work), {}, {"type2"}, true);
}

// Isotherm pV = C starting at `from`, moving to V2, as a single segment in
// `chart` with the gas block at gas_off and optional reservoir block.
struct IsothermShape {
  GasState from;
  double V2;
  double C;
  double L;
  GasState end() const { return {C / V2, V2}; }
  GasState at(double mu) const {
    if (mu <= 0.0) return from;
    if (mu >= 1.0) return end();
    const double V = from.V * std::exp(mu * L);
    return {C / V, V};
  }
};

IsothermShape isotherm_shape(const GasState& from, double V2) {
  return {from, V2, from.p * from.V, std::log(V2 / from.V)};
}

}  // namespace

void check_state(const GasState& s) {
  if (!(s.p > kStateFloor && s.V > kStateFloor) || !std::isfinite(s.p) || !std::isfinite(s.V)) {
    fail(ErrorKind::DomainError, "gas state outside the open positive quadrant");
  }
}

double adiabat_invariant(const GasModel& g, const GasState& s) { return s.p * std::pow(s.V, g.gamma); }

double isotherm_theta(const GasModel& g, const GasState& s) { return s.p * s.V / g.nR(); }

QuasistaticFamily type1(const Gas& gas, const GasState& from, double p2) {
  check_state(from);
  if (p2 < from.p) fail(ErrorKind::PressureDecrease, "type-1 processes only raise the pressure");
  check_state({p2, from.V});
  const double dof = gas.model.dof_half();
  CurveSegment seg{gas_chart(gas.atom),
                   [=](double mu) {
                     if (mu >= 1.0) return gas_point({p2, from.V});
                     return gas_point({(1.0 - mu) * from.p + mu * p2, from.V});
                   },
                   [=](double) {
                     Point t{};
                     t[kP] = p2 - from.p;
                     return t;
                   }};
  std::map<AtomId, PiecewiseForm> work{
      {gas.atom, {[dof](const Point& x, const Point& dx) { return dof * x[kV] * dx[kP]; }}}};
  return QuasistaticFamily(Curve({seg}), std::move(work), {}, {"type1"}, false);
}

QuasistaticFamily type2(const Gas& gas, const GasState& from, double V2) {
  check_state(from);
  const GasState end{from.p * std::pow(from.V / V2, gas.model.gamma), V2};
  check_state(end);
  return adiabat_family(gas, from, end);
}

QuasistaticFamily type2_to(const Gas& gas, const GasState& from, const GasState& to) {
  check_state(from);
  check_state(to);
  if (!nearly_equal(adiabat_invariant(gas.model, from), adiabat_invariant(gas.model, to),
                    kIsothermTolerance)) {
    fail(ErrorKind::PreconditionNotMet, "states do not share an adiabat");
  }
  return adiabat_family(gas, from, to);
}

QuasistaticFamily type3(const Gas& gas, const Reservoir& r, const GasState& from, double reservoir_energy,
                        double V2) {
  check_state(from);
  check_state({from.p * from.V / V2, V2});
  if (!nearly_equal(from.p * from.V, gas.model.nR() * r.theta, kIsothermTolerance)) {
    fail(ErrorKind::OffIsotherm, "gas is not on the reservoir's isotherm");
  }
  const Chart chart({{gas.atom, 2}, {r.atom, 1}});
  const auto g = *chart.offset(gas.atom);
  const auto e = *chart.offset(r.atom);
  const auto shape = isotherm_shape(from, V2);
  const double E0 = reservoir_energy;
  CurveSegment seg{chart,
                   [=](double mu) {
                     const auto s = shape.at(mu);
                     Point x{};
                     x[g + kP] = s.p;
                     x[g + kV] = s.V;
                     x[e] = mu >= 1.0 ? E0 - shape.C * shape.L : E0 - shape.C * mu * shape.L;
                     return x;
                   },
                   [=](double mu) {
                     const auto s = shape.at(mu);
                     Point t{};
                     t[g + kP] = -s.p * shape.L;
                     t[g + kV] = s.V * shape.L;
                     t[e] = -shape.C * shape.L;
                     return t;
                   }};
  std::map<AtomId, PiecewiseForm> work{{gas.atom, {minus_p_dV(g)}}};
  std::map<AtomId, PiecewiseForm> heat{
      {gas.atom, {[e](const Point&, const Point& dx) { return -dx[e]; }}},
      {r.atom, {[e](const Point&, const Point& dx) { return dx[e]; }}}};
  return QuasistaticFamily(Curve({seg}), std::move(work), std::move(heat), {"type3"}, true);
}

QuasistaticFamily friction_isotherm(const Gas& gas, const GasState& from, double V2) {
  check_state(from);
  check_state({from.p * from.V / V2, V2});
  const auto shape = isotherm_shape(from, V2);
  const double dof = gas.model.dof_half();
  CurveSegment seg{gas_chart(gas.atom), [=](double mu) { return gas_point(shape.at(mu)); },
                   [=](double mu) {
                     const auto s = shape.at(mu);
                     Point t{};
                     t[kP] = -s.p * shape.L;
                     t[kV] = s.V * shape.L;
                     return t;
                   }};
  // Expansion work -p dV plus the friction work that keeps pV fixed.
  std::map<AtomId, PiecewiseForm> work{{gas.atom,
                                        {[dof](const Point& x, const Point& dx) {
                                          const double expansion = -x[kP] * dx[kV];
                                          const double friction = dof * x[kV] * dx[kP] + (dof + 1.0) * x[kP] * dx[kV];
                                          return expansion + friction;
                                        }}}};
  return QuasistaticFamily(Curve({seg}), std::move(work), {}, {"friction-isotherm"}, false);
}

Process conduction(const Gas& a, const GasState& sa, const Gas& b, const GasState& sb, double q) {
  check_state(sa);
  check_state(sb);
  if (!(q > 0)) fail(ErrorKind::InvalidArgument, "conduction heat must be positive");
  const GasState fa{sa.p - q / (a.model.dof_half() * sa.V), sa.V};
  const GasState fb{sb.p + q / (b.model.dof_half() * sb.V), sb.V};
  if (!(fa.p > kStateFloor)) fail(ErrorKind::PreconditionNotMet, "conduction would empty the hot gas");
  if (isotherm_theta(a.model, fa) < isotherm_theta(b.model, fb)) {
    fail(ErrorKind::PreconditionNotMet, "heat flows from the hotter gas and stops at equal temperatures");
  }
  return Process({{{a.atom, sa}, {a.atom, fa}, 0.0}, {{b.atom, sb}, {b.atom, fb}, 0.0}}, {"conduction"});
}

Process reservoir_conduction(const Gas& gas, const GasState& from, double p2, const Reservoir& r,
                             double reservoir_energy) {
  check_state(from);
  const GasState to{p2, from.V};
  check_state(to);
  const double q_gas = gas.model.dof_half() * from.V * (p2 - from.p);
  const double theta_end = isotherm_theta(gas.model, to);
  if ((q_gas > 0 && r.theta < theta_end) || (q_gas < 0 && r.theta > theta_end)) {
    fail(ErrorKind::PreconditionNotMet, "heat would flow from the colder to the hotter body");
  }
  return Process({{{gas.atom, from}, {gas.atom, to}, 0.0},
                  {{r.atom, ReservoirState{reservoir_energy}},
                   {r.atom, ReservoirState{reservoir_energy - q_gas}},
                   0.0}},
                 {"conduction"});
}

QuasistaticFamily connect_family(const Gas& gas, const GasState& s1, const GasState& s2) {
  check_state(s1);
  check_state(s2);
  const double k1 = adiabat_invariant(gas.model, s1);
  const double k2 = adiabat_invariant(gas.model, s2);
  if (nearly_equal(k1, k2, 1e-12)) return type2_to(gas, s1, s2);
  const auto& lo = k1 < k2 ? s1 : s2;
  const auto& hi = k1 < k2 ? s2 : s1;
  const auto leg1 = type2(gas, lo, hi.V);
  const GasState mid{std::get<GasState>(leg1.final().at(gas.atom)).p, hi.V};
  if (mid.p >= hi.p) return type2_to(gas, lo, hi);
  return concat_families(leg1, type1(gas, mid, hi.p));
}

Process connect(const Gas& gas, const GasState& s1, const GasState& s2) {
  return connect_family(gas, s1, s2).whole().retagged({"connect"});
}

std::vector<QuasistaticFamily> connect_reversible(const Gas& gas, const GasState& s1,
                                                  const GasState& s2, const Reservoir& r,
                                                  double reservoir_energy) {
  check_state(s1);
  check_state(s2);
  const auto& g = gas.model;
  const double C = g.nR() * r.theta;
  auto onto_isotherm = [&](const GasState& s) {
    const double V = std::pow(adiabat_invariant(g, s) / C, 1.0 / (g.gamma - 1.0));
    return GasState{C / V, V};
  };
  const auto a = onto_isotherm(s1);
  const auto b = onto_isotherm(s2);
  auto first = type2_to(gas, s1, a);
  auto middle = type3(gas, r, a, reservoir_energy, b.V);
  const auto b_actual = std::get<GasState>(middle.final().at(gas.atom));
  auto last = type2_to(gas, b_actual, s2);
  return {std::move(first), std::move(middle), std::move(last)};
}

namespace {

std::array<double, 2> unit_tangent(const QuasistaticFamily& f, AtomId atom) {
  const auto t = f.curve().tangent(0.0);
  const auto off = *f.curve().chart().offset(atom);
  const double dp = t[off + kP];
  const double dV = t[off + kV];
  const double n = std::hypot(dp, dV);
  return {dp / n, dV / n};
}

}  // namespace

std::array<std::array<double, 2>, 2> first_law_tangents(const Gas& gas, const GasState& s) {
  return {unit_tangent(type1(gas, s, 2.0 * s.p), gas.atom), unit_tangent(type2(gas, s, 2.0 * s.V), gas.atom)};
}

std::array<std::array<double, 2>, 2> entropy_tangents(const Gas& gas, const GasState& s) {
  const Reservoir probe{AtomId{0, AtomKind::Reservoir}, isotherm_theta(gas.model, s)};
  return {unit_tangent(type2(gas, s, 2.0 * s.V), gas.atom),
          unit_tangent(type3(gas, probe, s, 0.0, 2.0 * s.V), gas.atom)};
}

QsPostulateReport check_qs_postulates(const Gas& gas, const std::vector<GasState>& states,
                                      const std::vector<std::pair<GasState, GasState>>& pairs,
                                      std::vector<TangentConstructor> tangents, double threshold) {
  if (tangents.empty()) tangents = {first_law_tangents, entropy_tangents};
  QsPostulateReport r;
  r.min_determinant = INFINITY;
  for (const auto& s : states) {
    ++r.states_checked;
    bool ok = true;
    for (const auto& make : tangents) {
      const auto t = make(gas, s);
      const double n0 = std::hypot(t[0][0], t[0][1]);
      const double n1 = std::hypot(t[1][0], t[1][1]);
      const double det = n0 > 0 && n1 > 0 ? std::fabs(t[0][0] * t[1][1] - t[0][1] * t[1][0]) / (n0 * n1) : 0.0;
      r.min_determinant = std::min(r.min_determinant, det);
      ok = ok && det >= threshold;
    }
    if (!ok) r.dependent.push_back(s);
  }
  for (const auto& [a, b] : pairs) {
    ++r.pairs_checked;
    bool ok = false;
    try {
      const auto p = connect(gas, a, b);
      const auto& i = p.initial(gas.atom);
      const auto& f = p.final(gas.atom);
      ok = (same_state(i, a, 1e-9) && same_state(f, b, 1e-9)) || (same_state(i, b, 1e-9) && same_state(f, a, 1e-9));
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) r.unconnected.emplace_back(a, b);
  }
  if (r.states_checked == 0) r.min_determinant = 0.0;
  return r;
}

namespace oracle {

double energy(const GasModel& g, const GasState& s) { return g.dof_half() * s.p * s.V + g.U0; }

double entropy(const GasModel& g, const GasState& s) {
  const double k = g.dof_half();
  return g.nR() * (k * std::log(s.p / g.sigma0.p) + (k + 1.0) * std::log(s.V / g.sigma0.V)) + g.S0;
}

double temperature(const GasModel& g, const GasState& s) { return s.p * s.V / g.nR(); }

double energy_from_entropy(const GasModel& g, double S, double V) {
  const double k = g.dof_half();
  const auto& s0 = g.sigma0;
  return k * s0.p * s0.V * std::pow(V / s0.V, -1.0 / k) * std::exp((S - g.S0) / (k * g.nR())) + g.U0;
}

GasState from_energy_volume(const GasModel& g, double U, double V) {
  return {(U - g.U0) / (g.dof_half() * V), V};
}

}  // namespace oracle

}  // namespace ideal_gas
}  // namespace thermo
