#include "thermo/carnot.hpp"

#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

double energy_of(const Process& p, AtomId r, double fallback) {
  return p.involves(r) ? std::get<ReservoirState>(p.final(r)).E : fallback;
}

}  // namespace

CarnotRun build_carnot(World& world, const Reservoir& r1, const Reservoir& r2, double q_target,
                       const CarnotOptions& opts) {
  if (r1.atom == r2.atom) fail(ErrorKind::SameReservoir, "a Carnot engine needs two distinct reservoirs");
  if (!std::isfinite(q_target)) fail(ErrorKind::InvalidArgument, "heat target must be finite");
  if (!(opts.volume_ratio > 1.0) || !(opts.v_start > 0.0) || !(opts.friction_factor >= 1.0)) {
    fail(ErrorKind::InvalidArgument, "invalid Carnot options");
  }

  GasModel model;
  model.R = opts.R;
  model.gamma = opts.gamma;
  const double log_ratio = std::log(opts.volume_ratio);
  if (q_target != 0.0) model.n = std::fabs(q_target) / (opts.R * r1.theta * log_ratio);
  const Gas gas = add_gas(world, model);

  const GasState a{model.nR() * r1.theta / opts.v_start, opts.v_start};
  const JointState sigma{{gas.atom, a}, {r1.atom, ReservoirState{opts.e1}}, {r2.atom, ReservoirState{opts.e2}}};
  CarnotRun run{r1, r2, gas, make_identity(System{gas.atom, r1.atom, r2.atom}, sigma).retagged({"carnot"}),
                0, 0, 0, true, {}};
  if (q_target == 0.0) return run;

  const double dof = 1.0 / (model.gamma - 1.0);
  auto gas_end = [&](const QuasistaticFamily& f) { return std::get<GasState>(f.final().at(gas.atom)); };
  auto to_isotherm = [&](const GasState& s, double theta) {
    return std::pow(ideal_gas::adiabat_invariant(model, s) / (model.nR() * theta), dof);
  };

  std::vector<QuasistaticFamily> parts;
  std::vector<std::string> labels;
  const double v_b = q_target < 0 ? opts.v_start * opts.volume_ratio : opts.v_start / opts.volume_ratio;
  parts.push_back(ideal_gas::type3(gas, r1, a, opts.e1, v_b));
  labels.push_back("isotherm-1");
  if (opts.friction_factor > 1.0) {
    const auto b = gas_end(parts.back());
    parts.push_back(ideal_gas::type1(gas, b, b.p * opts.friction_factor));
    labels.push_back("friction");
    run.reversible = false;
  }
  const auto b = gas_end(parts.back());
  parts.push_back(ideal_gas::type2(gas, b, to_isotherm(b, r2.theta)));
  labels.push_back("adiabat-1");
  const auto c = gas_end(parts.back());
  parts.push_back(ideal_gas::type3(gas, r2, c, opts.e2, to_isotherm(a, r2.theta)));
  labels.push_back("isotherm-2");
  const auto d = gas_end(parts.back());
  parts.push_back(ideal_gas::type2_to(gas, d, a));
  labels.push_back("adiabat-2");

  for (std::size_t i = 0; i < parts.size(); ++i) {
    run.segments.push_back({labels[i], parts[i].work(gas.atom, 0.0, 1.0), parts[i].heat(gas.atom, 0.0, 1.0)});
  }
  run.process = concat_families(parts).whole().retagged({"carnot"});
  run.q1 = energy_of(run.process, r1.atom, opts.e1) - opts.e1;
  run.q2 = energy_of(run.process, r2.atom, opts.e2) - opts.e2;
  run.w = run.process.work(gas.atom);
  return run;
}

double temperature_ratio(World& world, const Reservoir& r1, const Reservoir& r2, const CarnotOptions& opts) {
  Reservoir other = r2;
  if (r1.atom == r2.atom) {
    const auto [copy, map] = clone_system(world, System{r2.atom});
    other = reservoir_of(world, copy.atoms().front());
  }
  const auto run = build_carnot(world, r1, other, -1.0, opts);
  return -run.q1 / run.q2;
}

double absolute_temperature(World& world, const Reservoir& r, const Reservoir& ref, double t_ref) {
  if (!(t_ref > 0.0)) fail(ErrorKind::InvalidArgument, "reference temperature must be positive");
  if (r.atom == ref.atom) return t_ref;
  return temperature_ratio(world, r, ref) * t_ref;
}

bool same_temperature(World& world, const Reservoir& r1, const Reservoir& r2) {
  return std::fabs(temperature_ratio(world, r1, r2) - 1.0) <= 1e-6;
}

SecondLawVerdict check_second_law(const Reservoir& r, const System& s, const Process& p, double tol) {
  if (s.contains(r.atom) || !is_work_process(compose(System{r.atom}, s), p)) {
    fail(ErrorKind::PreconditionNotMet, "expected a work process on the reservoir and the system");
  }
  if (!classify(s, p).cyclic) fail(ErrorKind::PreconditionNotMet, "process is not cyclic on the system");
  SecondLawVerdict v;
  v.work = work_of(s, p);
  v.reservoir_heat = std::get<ReservoirState>(p.final(r.atom)).E - std::get<ReservoirState>(p.initial(r.atom)).E -
                     p.work(r.atom);
  v.pass = v.work >= -tol;
  return v;
}

TemperatureScale::TemperatureScale(World& world, double theta_ref, double t_ref)
    : world_(&world), ref_(add_reservoir(world, theta_ref)), t_ref_(t_ref) {
  if (!(t_ref > 0.0)) fail(ErrorKind::InvalidArgument, "reference temperature must be positive");
}

double TemperatureScale::of(const Reservoir& r) const {
  if (r.atom == ref_.atom) return t_ref_;
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(r.theta);
    if (it != memo_.end()) return it->second;
  }
  const double t = temperature_ratio(*world_, r, ref_) * t_ref_;
  std::lock_guard lock(mutex_);
  return memo_.emplace(r.theta, t).first->second;
}

double TemperatureScale::of_theta(double theta) const {
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(theta);
    if (it != memo_.end()) return it->second;
  }
  return of(add_reservoir(*world_, theta));
}

}  // namespace thermo
