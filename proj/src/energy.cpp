#include "thermo/energy.hpp"

#include <cmath>
#include <mutex>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

constexpr double kZeroMove = 1e-13;

}  // namespace

std::vector<Move> GasCatalog::moves(const StateValue& from_v, const StateValue& target_v) const {
  const auto& from = std::get<GasState>(from_v);
  const auto& target = std::get<GasState>(target_v);
  const auto& g = gas_.model;
  const Gas gas = gas_;
  const double k_from = ideal_gas::adiabat_invariant(g, from);
  const double k_target = ideal_gas::adiabat_invariant(g, target);
  const bool same_adiabat = nearly_equal(k_from, k_target, ideal_gas::kIsothermTolerance);

  std::vector<Move> out;
  auto push = [&](GasState end, std::function<Process()> build, std::string label) {
    if (!(end.p > ideal_gas::kStateFloor && end.V > ideal_gas::kStateFloor)) return;
    if (same_state(end, from, kZeroMove)) return;
    for (const auto& m : out) {
      if (same_state(m.end, end, kZeroMove)) return;
    }
    out.push_back({end, std::move(build), std::move(label)});
  };

  if (same_adiabat) {
    push(target, [gas, from, target] { return ideal_gas::type2_to(gas, from, target).whole(); }, "type2");
  } else {
    const GasState by_volume{from.p * std::pow(from.V / target.V, g.gamma), target.V};
    push(by_volume, [gas, from, V = target.V] { return ideal_gas::type2(gas, from, V).whole(); }, "type2");
    const double V_at_p = from.V * std::pow(from.p / target.p, 1.0 / g.gamma);
    const GasState by_pressure{from.p * std::pow(from.V / V_at_p, g.gamma), V_at_p};
    push(by_pressure, [gas, from, V_at_p] { return ideal_gas::type2(gas, from, V_at_p).whole(); }, "type2");
  }
  if (target.p > from.p) {
    push({target.p, from.V}, [gas, from, p = target.p] { return ideal_gas::type1(gas, from, p).whole(); },
         "type1");
  }
  const double p_on_adiabat = k_target / std::pow(from.V, g.gamma);
  if (p_on_adiabat > from.p && !same_adiabat) {
    push({p_on_adiabat, from.V},
         [gas, from, p_on_adiabat] { return ideal_gas::type1(gas, from, p_on_adiabat).whole(); }, "type1");
  }
  return out;
}

std::vector<Move> ReservoirCatalog::moves(const StateValue& from_v, const StateValue& target_v) const {
  const double e0 = std::get<ReservoirState>(from_v).E;
  const double e1 = std::get<ReservoirState>(target_v).E;
  if (!(e1 > e0)) return {};
  const auto atom = r_.atom;
  return {{ReservoirState{e1},
           [atom, e0, e1] {
             return Process({{{atom, ReservoirState{e0}}, {atom, ReservoirState{e1}}, e1 - e0}}, {"friction"});
           },
           "friction"}};
}

CatalogFactory default_catalogs(const World& world) {
  const World* w = &world;
  return [w](AtomId atom) -> std::shared_ptr<const WorkCatalog> {
    switch (atom.kind) {
      case AtomKind::IdealGas:
        return std::make_shared<GasCatalog>(gas_of(*w, atom));
      case AtomKind::Reservoir:
        return std::make_shared<ReservoirCatalog>(reservoir_of(*w, atom));
      case AtomKind::Abstract:
        return nullptr;
    }
    return nullptr;
  };
}

Process WorkPath::build() const {
  std::vector<Process> built;
  built.reserve(steps.size());
  for (const auto& s : steps) built.push_back(s());
  return concatenate_all(built);
}

namespace {

struct Searcher {
  const WorkCatalog& catalog;
  const StateValue& target;
  const SearchOptions& opts;
  bool first_only;
  PathSearch result;
  std::vector<std::string> labels;
  std::vector<std::function<Process()>> steps;

  bool done() const { return first_only && !result.paths.empty(); }

  void dfs(const StateValue& at, int remaining) {
    if (done()) return;
    if (remaining == 0) {
      result.truncated = true;
      return;
    }
    for (auto& m : catalog.moves(at, target)) {
      labels.push_back(m.label);
      steps.push_back(m.build);
      if (same_state(m.end, target, opts.arrival_tol)) {
        if (remaining == 1) result.paths.push_back({labels, steps});
      } else {
        dfs(m.end, remaining - 1);
      }
      labels.pop_back();
      steps.pop_back();
      if (done() || result.paths.size() >= opts.max_paths) return;
    }
  }
};

}  // namespace

PathSearch find_paths(const WorkCatalog& catalog, const StateValue& from, const StateValue& to,
                      const SearchOptions& opts, bool first_only) {
  PathSearch out;
  if (same_state(from, to, kZeroMove)) {
    out.paths.push_back({});
    return out;
  }
  out.truncated = opts.max_depth < 1;
  for (int depth = 1; depth <= opts.max_depth; ++depth) {
    Searcher s{catalog, to, opts, first_only, {}, {}, {}};
    s.dfs(from, depth);
    for (auto& p : s.result.paths) {
      if (out.paths.size() < opts.max_paths) out.paths.push_back(std::move(p));
    }
    out.truncated = s.result.truncated;
    if ((first_only && !out.paths.empty()) || out.paths.size() >= opts.max_paths) break;
    if (!s.result.truncated) break;
  }
  return out;
}

bool reaches(const WorkCatalog& catalog, const StateValue& s1, const StateValue& s2, const SearchOptions& opts) {
  const auto found = find_paths(catalog, s1, s2, opts, true);
  if (!found.paths.empty()) return true;
  if (found.truncated) fail(ErrorKind::DepthExceeded, "no work process found within the search depth");
  return false;
}

EnergyLedger::EnergyLedger(const World& world, SearchOptions opts)
    : EnergyLedger(world, default_catalogs(world), opts) {}

EnergyLedger::EnergyLedger(const World& world, CatalogFactory factory, SearchOptions opts)
    : world_(&world), factory_(std::move(factory)), opts_(opts) {}

void EnergyLedger::set_reference(AtomId atom, StateValue sigma0, double u0) {
  std::unique_lock lock(mutex_);
  references_.insert_or_assign(atom, std::make_pair(std::move(sigma0), u0));
  std::erase_if(memo_, [&](const auto& kv) { return kv.first.atom == atom; });
}

std::pair<StateValue, double> EnergyLedger::reference(AtomId atom) const {
  {
    std::shared_lock lock(mutex_);
    auto it = references_.find(atom);
    if (it != references_.end()) return it->second;
  }
  switch (atom.kind) {
    case AtomKind::IdealGas: {
      const auto& g = world_->gas_model(atom);
      return {g.sigma0, g.U0 + g.dof_half() * g.sigma0.p * g.sigma0.V};
    }
    case AtomKind::Reservoir:
      return {ReservoirState{0.0}, 0.0};
    case AtomKind::Abstract:
      break;
  }
  fail(ErrorKind::Unreachable, "no reference state for an abstract atom");
}

std::shared_ptr<const WorkCatalog> EnergyLedger::catalog(AtomId atom) const {
  {
    std::shared_lock lock(mutex_);
    auto it = catalogs_.find(atom);
    if (it != catalogs_.end()) return it->second;
  }
  auto made = factory_(atom);
  std::unique_lock lock(mutex_);
  return catalogs_.emplace(atom, std::move(made)).first->second;
}

double EnergyLedger::internal_energy(AtomId atom, const StateValue& sigma) const {
  Key key{atom, coordinates(sigma)};
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const auto [ref, u0] = reference(atom);
  double u = u0;
  if (!same_state(ref, sigma, kZeroMove)) {
    const auto cat = catalog(atom);
    if (!cat) fail(ErrorKind::Unreachable, "atom has no work-process catalog");
    auto forward = find_paths(*cat, ref, sigma, opts_, true);
    if (!forward.paths.empty()) {
      u = u0 + forward.paths.front().build().work(atom);
    } else {
      auto backward = find_paths(*cat, sigma, ref, opts_, true);
      if (backward.paths.empty()) fail(ErrorKind::Unreachable, "state not connected to the reference");
      u = u0 - backward.paths.front().build().work(atom);
    }
  }
  std::unique_lock lock(mutex_);
  memo_.emplace(std::move(key), u);
  return u;
}

double EnergyLedger::internal_energy(const System& s, const JointState& sigma) const {
  double total = 0.0;
  for (auto a : s.atoms()) total += internal_energy(a, sigma.at(a));
  return total;
}

double EnergyLedger::delta(const System& s, const Process& p) const {
  double total = 0.0;
  for (auto a : s.atoms()) {
    if (!p.involves(a)) continue;
    total += internal_energy(a, p.final(a)) - internal_energy(a, p.initial(a));
  }
  return total;
}

double heat_of(const EnergyLedger& ledger, const System& s, const Process& p) {
  return ledger.delta(s, p) - work_of(s, p);
}

FirstLawReport check_first_law(const WorkCatalog& catalog,
                               const std::vector<std::pair<StateValue, StateValue>>& pairs,
                               const SearchOptions& opts, double rel, double abs) {
  FirstLawReport report;
  for (const auto& [a, b] : pairs) {
    ++report.pairs_checked;
    auto found = find_paths(catalog, a, b, opts);
    double sign = 1.0;
    if (found.paths.empty()) {
      const bool truncated = found.truncated;
      found = find_paths(catalog, b, a, opts);
      sign = -1.0;
      if (found.paths.empty()) {
        if (truncated || found.truncated) {
          ++report.inconclusive;
        } else {
          report.violations.push_back({a, b, {}, {}, "unreachable"});
        }
        continue;
      }
    }
    FirstLawViolation record{a, b, {}, {}, "path-dependent"};
    bool consistent = true;
    for (const auto& path : found.paths) {
      std::string name;
      for (const auto& l : path.labels) name += (name.empty() ? "" : "+") + l;
      record.paths.push_back(name.empty() ? "identity" : name);
      double w = 0.0;
      if (!path.steps.empty()) {
        const auto p = path.build();
        for (const auto& [atom, e] : p.entries()) w += e.work;
      }
      record.works.push_back(sign * w);
      if (!agree(record.works.front(), record.works.back(), rel, abs)) consistent = false;
    }
    if (!consistent) report.violations.push_back(std::move(record));
  }
  return report;
}

}  // namespace thermo
