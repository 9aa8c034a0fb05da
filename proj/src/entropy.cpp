#include "thermo/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

constexpr double kZeroHeat = 1e-12;
constexpr double kSingletonTol = 1e-9;

double contact_temperature(const World& world, const TemperatureScale& scale, AtomId atom,
                           const StateValue& initial) {
  switch (atom.kind) {
    case AtomKind::Reservoir:
      return scale.of(reservoir_of(world, atom));
    case AtomKind::IdealGas:
      return scale.of_theta(ideal_gas::isotherm_theta(world.gas_model(atom), std::get<GasState>(initial)));
    case AtomKind::Abstract:
      break;
  }
  fail(ErrorKind::NoTemperature, "abstract atoms have no contact temperature");
}

}  // namespace

TemperatureInterval assign_heat_temperature(const EnergyLedger& energy, const TemperatureScale& scale,
                                            const System& s1, const System& s2, const Process& p) {
  if (!disjoint(s1, s2)) fail(ErrorKind::Overlap, "the two parts must be disjoint");
  if (!is_work_process(compose(s1, s2), p)) fail(ErrorKind::NotWorkProcess, "expected a work process on s1 ∨ s2");
  const double q = heat_of(energy, s2, p);
  if (std::fabs(q) <= kZeroHeat) fail(ErrorKind::ZeroHeat, "no heat flows between the parts");

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  std::optional<double> fixed;
  for (const auto& [atom, e] : p.entries()) {
    const double qa = heat_of(energy, System{atom}, p);
    if (std::fabs(qa) <= kZeroHeat) continue;
    const double t = contact_temperature(energy.world(), scale, atom, e.initial.value);
    if (atom.kind == AtomKind::Reservoir) fixed = t;
    if (qa < 0) {
      hi = std::min(hi, t);
    } else {
      lo = std::max(lo, t);
    }
  }
  if (!(lo > 0.0) || !std::isfinite(hi)) fail(ErrorKind::NoTemperature, "heat has no source or no sink");
  if (std::fabs(hi - lo) <= kSingletonTol * hi) {
    const double t = fixed.value_or(0.5 * (lo + hi));
    return {t, t};
  }
  if (lo > hi) fail(ErrorKind::NoTemperature, "heat flows from the colder to the hotter body");
  return {lo, hi};
}

double clausius_sum(const System& probe, const std::vector<HeatFlowRecord>& records, double state_tol) {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  std::map<AtomId, StateValue> first;
  std::map<AtomId, StateValue> current;
  for (const auto& r : records) {
    for (auto atom : probe.atoms()) {
      if (!r.process.involves(atom)) continue;
      const auto& init = r.process.initial(atom);
      auto it = current.find(atom);
      if (it != current.end() && !same_state(it->second, init, state_tol)) {
        fail(ErrorKind::NotCyclic, "consecutive steps do not meet on the probe system");
      }
      first.emplace(atom, init);
      current.insert_or_assign(atom, r.process.final(atom));
    }
    if (r.q != 0.0) {
      if (!r.temperature) fail(ErrorKind::UnassignedTemperature, "heat flow without a temperature");
      sum += r.q / *r.temperature;
    }
  }
  for (const auto& [atom, v] : first) {
    if (!same_state(v, current.at(atom), state_tol)) fail(ErrorKind::NotCyclic, "sequence does not return");
  }
  return sum;
}

EntropyLedger::EntropyLedger(World& world, const EnergyLedger& energy, const TemperatureScale& scale)
    : world_(&world), bank_(world), energy_(&energy), scale_(&scale) {}

void EntropyLedger::set_reference(AtomId atom, StateValue sigma0, double s0) {
  std::unique_lock lock(mutex_);
  references_.insert_or_assign(atom, std::make_pair(std::move(sigma0), s0));
  std::erase_if(memo_, [&](const auto& kv) { return kv.first.first == atom; });
}

std::pair<StateValue, double> EntropyLedger::reference(AtomId atom) const {
  {
    std::shared_lock lock(mutex_);
    auto it = references_.find(atom);
    if (it != references_.end()) return it->second;
  }
  switch (atom.kind) {
    case AtomKind::IdealGas: {
      const auto& g = world_->gas_model(atom);
      return {g.sigma0, g.S0};
    }
    case AtomKind::Reservoir:
      return {ReservoirState{0.0}, 0.0};
    case AtomKind::Abstract:
      break;
  }
  fail(ErrorKind::Unreachable, "no entropy reference for an abstract atom");
}

std::vector<HeatFlowRecord> EntropyLedger::sequence(AtomId atom, const StateValue& from, const StateValue& to,
                                                    std::optional<double> theta_prime) const {
  std::vector<HeatFlowRecord> out;
  if (atom.kind == AtomKind::IdealGas) {
    const auto gas = gas_of(*world_, atom);
    const auto r = bank_.at(theta_prime.value_or(scale_->reference().theta));
    const auto parts =
        ideal_gas::connect_reversible(gas, std::get<GasState>(from), std::get<GasState>(to), r);
    for (const auto& f : parts) {
      auto proc = f.whole();
      if (proc.involves(r.atom)) {
        const double q = heat_of(*energy_, System{atom}, proc);
        out.push_back({std::move(proc), q, scale_->of(r)});
      } else {
        out.push_back({std::move(proc), 0.0, std::nullopt});
      }
    }
    return out;
  }
  if (atom.kind == AtomKind::Reservoir) {
    const auto r = reservoir_of(*world_, atom);
    const double e0 = std::get<ReservoirState>(from).E;
    const double e1 = std::get<ReservoirState>(to).E;
    const auto [copy, map] = clone_system(*world_, System{atom});
    const auto partner = reservoir_of(*world_, copy.atoms().front());
    CarnotOptions opts;
    opts.e1 = e0;
    const auto run = build_carnot(*world_, r, partner, e1 - e0, opts);
    auto reduced = eliminate_catalyst(System{atom, partner.atom}, System{run.machine.atom}, run.process);
    const double q = heat_of(*energy_, System{atom}, reduced);
    out.push_back({std::move(reduced), q, scale_->of(partner)});
    return out;
  }
  fail(ErrorKind::Unreachable, "no reversible sequence for an abstract atom");
}

double EntropyLedger::entropy(AtomId atom, const StateValue& sigma, std::optional<double> theta_prime) const {
  const bool cacheable = !theta_prime.has_value();
  std::pair<AtomId, std::vector<double>> key{atom, coordinates(sigma)};
  if (cacheable) {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const auto [ref, s0] = reference(atom);
  double s = s0;
  for (const auto& rec : sequence(atom, ref, sigma, theta_prime)) {
    if (rec.q != 0.0) s += rec.q / *rec.temperature;
  }
  if (cacheable) {
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), s);
  }
  return s;
}

double EntropyLedger::entropy(const System& s, const JointState& sigma, std::optional<double> theta_prime) const {
  double total = 0.0;
  for (auto a : s.atoms()) total += entropy(a, sigma.at(a), theta_prime);
  return total;
}

EntropyVerdict check_entropy_theorem(const EntropyLedger& ledger, const System& s, const Process& p, double tol) {
  if (!is_work_process(s, p)) fail(ErrorKind::NotWorkProcess, "the Entropy Theorem applies to work processes");
  EntropyVerdict v;
  v.delta = ledger.entropy(s, p.final_state()) - ledger.entropy(s, p.initial_state());
  v.reversible = p.has_reverse_witness();
  v.pass = v.delta >= -tol && (!v.reversible || std::fabs(v.delta) <= tol);
  return v;
}

}  // namespace thermo
