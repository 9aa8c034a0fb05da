#include "thermo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "thermo/errors.hpp"
#include "thermo/scaling.hpp"

namespace thermo {

namespace {

struct CaseResult {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (!ok) failures.push_back(describe());
  }
};

std::string fmt(double x) { return io::number(x); }

std::string state_text(const GasState& s) { return "(" + fmt(s.p) + ", " + fmt(s.V) + ")"; }

SuiteReport aggregate(std::string name, const std::vector<CaseResult>& cases) {
  SuiteReport r;
  r.suite = std::move(name);
  for (const auto& c : cases) {
    r.checks += c.checks;
    r.failures += c.failures.size();
    for (const auto& f : c.failures) {
      if (r.counterexamples.size() < 5) r.counterexamples.push_back(f);
    }
  }
  return r;
}

GasState random_state(Rng& rng, double lo = 0.25, double hi = 4.0) {
  return {rng.log_uniform(lo, hi), rng.log_uniform(lo, hi)};
}

SuiteReport first_law_suite(std::uint64_t seed, Execution exec) {
  World world;
  const auto gas = add_gas(world);
  const GasCatalog catalog(gas);
  const auto grid = log_grid(0.25, 4.0, 8);
  auto cases = map_indexed(
      grid.size(),
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        const auto other = random_state(rng);
        const auto report = check_first_law(catalog, {{grid[i], other}, {other, grid[i]}});
        c.expect(report.violations.empty() && report.inconclusive == 0,
                 [&] { return "first law fails between " + state_text(grid[i]) + " and " + state_text(other); });
        // At least two distinct connecting paths must exist in the reachable direction.
        const bool forward = ideal_gas::adiabat_invariant(gas.model, grid[i]) <=
                             ideal_gas::adiabat_invariant(gas.model, other);
        const auto paths = forward ? find_paths(catalog, grid[i], other) : find_paths(catalog, other, grid[i]);
        c.expect(paths.paths.size() >= 2, [&] { return "fewer than two paths to " + state_text(other); });
        return c;
      },
      exec);
  return aggregate("first-law", cases);
}

SuiteReport second_law_suite(std::uint64_t seed, Execution exec) {
  World world;
  const auto gas = add_gas(world);
  ReservoirBank bank(world);
  auto cases = map_indexed(
      200,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        const auto s = random_state(rng);
        const double theta_gas = ideal_gas::isotherm_theta(gas.model, s);
        const auto r = bank.at(theta_gas * rng.uniform(0.3, 1.0));
        const auto heat = ideal_gas::type1(gas, s, s.p * rng.uniform(1.05, 2.0)).whole();
        const auto hot = std::get<GasState>(heat.final(gas.atom));
        const auto cool = ideal_gas::reservoir_conduction(gas, hot, s.p, r, 0.0);
        const auto p = concatenate(heat, cool);
        const auto v = check_second_law(r, System{gas.atom}, p);
        c.expect(v.pass && v.work > 0, [&] { return "W_S = " + fmt(v.work) + " at " + state_text(s); });
        c.expect(agree(v.reservoir_heat, v.work, 1e-9, 1e-12),
                 [&] { return "Q_R " + fmt(v.reservoir_heat) + " != W_S " + fmt(v.work); });
        return c;
      },
      exec);
  return aggregate("second-law", cases);
}

SuiteReport carnot_suite(std::uint64_t seed, Execution exec) {
  World world;
  const std::vector<std::pair<double, double>> configs{{-1.0, 2.0}, {-0.5, 1.5}, {-4.0, 3.0}};
  auto cases = map_indexed(
      20,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        const auto r1 = add_reservoir(world, rng.log_uniform(0.2, 5.0));
        const auto r2 = add_reservoir(world, rng.log_uniform(0.2, 5.0));
        std::vector<double> ratios;
        for (const auto& [q, vr] : configs) {
          CarnotOptions o;
          o.volume_ratio = vr;
          const auto run = build_carnot(world, r1, r2, q, o);
          ratios.push_back(-run.q1 / run.q2);
          c.expect(run.q1 * run.q2 < 0, [&] { return "heat flows of equal sign"; });
          c.expect(agree(run.w, run.q1 + run.q2, 1e-9, 1e-12), [&] { return "w != q1 + q2"; });
          c.expect(classify(System{run.machine.atom}, run.process).cyclic, [&] { return "machine not cyclic"; });
        }
        for (double r : ratios) {
          c.expect(nearly_equal(r, ratios.front(), 1e-6), [&] { return "ratio depends on configuration"; });
          c.expect(std::fabs(r / (r1.theta / r2.theta) - 1.0) <= 1e-6,
                   [&] { return "ratio " + fmt(r) + " != " + fmt(r1.theta / r2.theta); });
        }
        CarnotOptions degraded;
        degraded.friction_factor = rng.uniform(1.05, 1.5);
        const auto bad = build_carnot(world, r1, r2, -1.0, degraded);
        c.expect(-bad.q1 / bad.q2 < ratios.front(), [&] { return "friction did not lower the ratio"; });
        c.expect(std::max(bad.q1, bad.q2) > 0, [&] { return "no positive heat flow"; });
        return c;
      },
      exec);
  return aggregate("carnot", cases);
}

struct CycleSetup {
  World world;
  Gas gas;
  EnergyLedger energy;
  TemperatureScale scale;
  ReservoirBank bank;

  CycleSetup() : gas(add_gas(world)), energy(world), scale(world), bank(world) {}
};

/// A random closed sequence on the gas; friction steps only when asked.
std::vector<HeatFlowRecord> random_cycle(CycleSetup& w, Rng& rng, bool friction) {
  std::vector<HeatFlowRecord> out;
  const auto start = random_state(rng, 0.5, 2.0);
  auto at = start;
  const int steps = 1 + static_cast<int>(rng.below(4));
  bool used_friction = false;
  auto record = [&](const QuasistaticFamily& f, std::optional<Reservoir> r) {
    auto p = f.whole();
    at = std::get<GasState>(p.final(w.gas.atom));
    if (r) {
      const double q = heat_of(w.energy, System{w.gas.atom}, p);
      out.push_back({std::move(p), q, w.scale.of(*r)});
    } else {
      out.push_back({std::move(p), 0.0, std::nullopt});
    }
  };
  for (int i = 0; i < steps || (friction && !used_friction); ++i) {
    const auto kind = rng.below(friction ? 3 : 2);
    if (kind == 0) {
      record(ideal_gas::type2(w.gas, at, at.V * rng.uniform(0.6, 1.6)), std::nullopt);
    } else if (kind == 1) {
      const auto r = w.bank.at(ideal_gas::isotherm_theta(w.gas.model, at));
      record(ideal_gas::type3(w.gas, r, at, 0.0, at.V * rng.uniform(0.6, 1.6)), r);
    } else {
      record(ideal_gas::type1(w.gas, at, at.p * rng.uniform(1.05, 1.5)), std::nullopt);
      used_friction = true;
    }
  }
  const auto r = w.bank.at(rng.log_uniform(0.3, 3.0));
  for (const auto& f : ideal_gas::connect_reversible(w.gas, at, start, r)) {
    const bool contact = f.atoms().contains(r.atom);
    record(f, contact ? std::optional<Reservoir>(r) : std::nullopt);
  }
  return out;
}

SuiteReport clausius_suite(std::uint64_t seed, Execution exec) {
  CycleSetup w;
  auto cases = map_indexed(
      500,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        const bool friction = i % 2 == 1;
        const auto records = random_cycle(w, rng, friction);
        const double sum = clausius_sum(System{w.gas.atom}, records);
        if (friction) {
          c.expect(sum < -1e-8, [&] { return "irreversible cycle with sum " + fmt(sum); });
        } else {
          c.expect(std::fabs(sum) <= 1e-8, [&] { return "reversible cycle with sum " + fmt(sum); });
        }
        return c;
      },
      exec);
  return aggregate("clausius", cases);
}

SuiteReport entropy_theorem_suite(std::uint64_t seed, Execution exec) {
  World world;
  const auto gas = add_gas(world);
  EnergyLedger energy(world);
  TemperatureScale scale(world);
  EntropyLedger entropy(world, energy, scale);
  auto cases = map_indexed(
      1000,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        auto at = random_state(rng, 0.5, 2.0);
        const bool reversible = rng.coin();
        std::vector<Process> steps;
        const int n = 1 + static_cast<int>(rng.below(4));
        for (int k = 0; k < n; ++k) {
          if (reversible || rng.coin()) {
            steps.push_back(ideal_gas::type2(gas, at, at.V * rng.uniform(0.5, 2.0)).whole());
          } else {
            steps.push_back(ideal_gas::type1(gas, at, at.p * rng.uniform(1.0, 2.0)).whole());
          }
          at = std::get<GasState>(steps.back().final(gas.atom));
        }
        const auto p = concatenate_all(steps);
        const auto v = check_entropy_theorem(entropy, System{gas.atom}, p);
        c.expect(v.pass, [&] { return "ΔS = " + fmt(v.delta) + (v.reversible ? " (reversible)" : ""); });
        return c;
      },
      exec);
  return aggregate("entropy-theorem", cases);
}

SuiteReport max_entropy_suite(std::uint64_t seed, Execution exec) {
  const GasModel base;
  auto cases = map_indexed(
      100,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult c;
        const double lambda = rng.uniform(0.05, 0.95);
        const UVState total{rng.uniform(0.5, 10.0), rng.uniform(0.5, 10.0)};
        const auto r = max_entropy_split(base, lambda, total);
        c.expect(std::fabs(r.part1.U - lambda * total.U) <= 1e-6 && std::fabs(r.part1.V - lambda * total.V) <= 1e-6,
                 [&] { return "argmax off the proportional split for λ=" + fmt(lambda); });
        c.expect(std::fabs(r.s_max - entropy_uv(base, total)) <= 1e-8,
                 [&] { return "S_max " + fmt(r.s_max) + " != unconstrained S"; });
        return c;
      },
      exec);
  CaseResult concavity;
  const auto report = check_concavity([&](double U, double V) { return entropy_uv(base, {U, V}); },
                                      {0.1, 10.0, 0.1, 10.0}, 1000, seed);
  concavity.expect(report.violations == 0, [&] { return "concavity slack " + fmt(report.min_slack); });
  cases.push_back(concavity);
  return aggregate("max-entropy", cases);
}

SuiteReport scaling_suite(std::uint64_t seed, Execution exec) {
  const GasModel base;
  CaseResult c;
  using ideal_gas::oracle::energy;
  using ideal_gas::oracle::entropy;
  using ideal_gas::oracle::temperature;
  const std::vector<std::pair<std::string, std::pair<StateProbe, Scaling>>> vars{
      {"V", {[](const GasModel&, const GasState& s) { return s.V; }, Scaling::Extensive}},
      {"p", {[](const GasModel&, const GasState& s) { return s.p; }, Scaling::Intensive}},
      {"U", {[](const GasModel& g, const GasState& s) { return energy(g, s); }, Scaling::Extensive}},
      {"S", {[](const GasModel& g, const GasState& s) { return entropy(g, s); }, Scaling::Extensive}},
      {"T", {[](const GasModel& g, const GasState& s) { return temperature(g, s); }, Scaling::Intensive}},
  };
  for (const auto& [name, v] : vars) {
    const auto got = classify_variable(v.first, base);
    c.expect(got == v.second, [&] { return name + " classified " + std::string(to_string(got)); });
  }
  auto cases = map_indexed(
      50,
      [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        CaseResult r;
        World world;
        const auto s = random_state(rng);
        const double V2 = s.V * rng.uniform(0.5, 2.0);
        const auto g1 = add_gas(world, base);
        const double w1 = ideal_gas::type2(g1, s, V2).whole().work(g1.atom);
        for (const auto l : {Rational::of(1, 3), Rational::of(1, 2), Rational::of(2), Rational::of(3)}) {
          const auto sg = scale(base, l);
          const auto gl = add_gas(world, sg.model);
          const double wl = ideal_gas::type2(gl, sg.scale_state(s), l.value() * V2).whole().work(gl.atom);
          r.expect(nearly_equal(wl, l.value() * w1, 1e-9), [&] { return "work does not scale at " + state_text(s); });
        }
        const auto half = scale(base, Rational::of(1, 2));
        const auto a1 = add_gas(world, half.model);
        const auto a2 = add_gas(world, half.model);
        const UVState u1{rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
        const UVState u2{rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
        const auto removed = remove_constraint(half, a1.atom, u1, half, a2.atom, u2);
        const double before = entropy_uv(half.model, u1) + entropy_uv(half.model, u2);
        const double after = entropy_uv(half.model, removed.part1) + entropy_uv(half.model, removed.part2);
        r.expect(after > before, [&] { return "constraint removal did not raise entropy"; });
        return r;
      },
      exec);
  cases.push_back(c);
  return aggregate("scaling", cases);
}

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"first-law",       "second-law",  "carnot", "clausius",
                                              "entropy-theorem", "max-entropy", "scaling"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, Execution exec) {
  if (name == "first-law") return first_law_suite(seed, exec);
  if (name == "second-law") return second_law_suite(seed, exec);
  if (name == "carnot") return carnot_suite(seed, exec);
  if (name == "clausius") return clausius_suite(seed, exec);
  if (name == "entropy-theorem") return entropy_theorem_suite(seed, exec);
  if (name == "max-entropy") return max_entropy_suite(seed, exec);
  if (name == "scaling") return scaling_suite(seed, exec);
  fail(ErrorKind::InvalidArgument, "unknown suite: " + std::string(name));
}

io::Json to_json(const SuiteReport& r) {
  return {{"suite", r.suite},
          {"checks", r.checks},
          {"failures", r.failures},
          {"passed", r.passed()},
          {"counterexamples", r.counterexamples}};
}

}  // namespace thermo
