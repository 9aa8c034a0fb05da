#include "thermo/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "thermo/batch.hpp"
#include "thermo/errors.hpp"
#include "thermo/io.hpp"
#include "thermo/scaling.hpp"
#include "thermo/verify.hpp"

namespace thermo {

namespace {

using Json = nlohmann::json;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void invalid(const std::string& msg) { throw ValidationError(msg); }

// ---- field access ---------------------------------------------------------

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) invalid(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

double number(const Json& obj, const std::string& key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number() || !std::isfinite(v.get<double>())) invalid(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

double positive(const Json& obj, const std::string& key, const std::string& where) {
  const double v = number(obj, key, where);
  if (!(v > 0)) invalid(where + ": \"" + key + "\" must be positive");
  return v;
}

std::vector<double> numbers(const Json& obj, const std::string& key, std::size_t n, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_array() || v.size() != n) {
    invalid(where + ": \"" + key + "\" must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) invalid(where + ": \"" + key + "\" holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

GasState gas_state(const Json& obj, const std::string& key, const std::string& where) {
  const auto v = numbers(obj, key, 2, where);
  if (!(v[0] > 0 && v[1] > 0)) invalid(where + ": \"" + key + "\" must have positive p and V");
  return {v[0], v[1]};
}

struct Axis {
  double lo, hi;
  std::size_t n;
};

Axis axis(const Json& obj, const std::string& key, const std::string& where) {
  const auto v = numbers(obj, key, 3, where);
  if (!(v[0] > 0 && v[1] >= v[0]) || v[2] < 1 || v[2] > 500 || v[2] != std::floor(v[2])) {
    invalid(where + ": \"" + key + "\" must be [lo, hi, n] with 0 < lo <= hi and 1 <= n <= 500");
  }
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

std::vector<double> log_axis(const Axis& a) {
  std::vector<double> out(a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    const double t = a.n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(a.n - 1);
    out[i] = std::exp(std::log(a.lo) + t * (std::log(a.hi) - std::log(a.lo)));
  }
  return out;
}

std::string string_field(const Json& obj, const std::string& key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) invalid(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

// ---- declarations ---------------------------------------------------------

struct AtomDecl {
  AtomKind kind;
  ModelBinding model;
  double energy = 0.0;  // reservoirs
};

struct Command {
  std::size_t index;
  std::string name;
  Json body;
  std::string where;
  std::set<std::string> atoms;
  std::optional<std::string> out;
};

struct Plan {
  double theta_ref = 1.0;
  double t_ref = 1.0;
  std::map<std::string, AtomDecl> atoms;
  std::vector<std::string> atom_order;
  std::vector<Command> script;
};

GasModel gas_model_from(const Json& a, const std::string& where) {
  GasModel g;
  g.n = a.contains("n") ? positive(a, "n", where) : 1.0;
  if (a.contains("R")) {
    if (a.at("R").is_string()) {
      if (a.at("R").get<std::string>() != "SI") invalid(where + ": \"R\" must be a number or \"SI\"");
      g.R = kGasConstantSI;
    } else {
      g.R = positive(a, "R", where);
    }
  }
  g.gamma = number_or(a, "gamma", g.gamma, where);
  if (!(g.gamma > 1.0)) invalid(where + ": \"gamma\" must exceed 1");
  if (a.contains("sigma0")) g.sigma0 = gas_state(a, "sigma0", where);
  g.U0 = number_or(a, "U0", 0.0, where);
  g.S0 = number_or(a, "S0", 0.0, where);
  return g;
}

const std::vector<std::string> kCommands{"energy",     "entropy", "temperature", "carnot",     "entropy_table",
                                         "path",       "first_law", "max_entropy", "concavity", "verify"};

void need_atom(const Plan& plan, Command& c, const std::string& key, std::initializer_list<AtomKind> kinds) {
  const auto name = string_field(c.body, key, c.where);
  auto it = plan.atoms.find(name);
  if (it == plan.atoms.end()) invalid(c.where + ": unknown atom \"" + name + "\"");
  bool ok = false;
  for (auto k : kinds) ok = ok || it->second.kind == k;
  if (!ok) invalid(c.where + ": atom \"" + name + "\" has the wrong kind for \"" + key + "\"");
  c.atoms.insert(name);
}

void validate_command(const Plan& plan, Command& c) {
  const auto& b = c.body;
  const auto& w = c.where;
  if (b.contains("tol")) positive(b, "tol", w);
  if (b.contains("expect")) number(b, "expect", w);
  if (c.name == "energy") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    gas_state(b, "state", w);
  } else if (c.name == "entropy") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas, AtomKind::Reservoir});
    if (plan.atoms.at(*c.atoms.begin()).kind == AtomKind::IdealGas) {
      gas_state(b, "state", w);
    } else {
      number(b, "state", w);
    }
    if (b.contains("theta")) positive(b, "theta", w);
  } else if (c.name == "temperature") {
    need_atom(plan, c, "reservoir", {AtomKind::Reservoir});
  } else if (c.name == "carnot") {
    need_atom(plan, c, "hot", {AtomKind::Reservoir});
    need_atom(plan, c, "cold", {AtomKind::Reservoir});
    if (c.atoms.size() != 2) invalid(w + ": \"hot\" and \"cold\" must name different reservoirs");
    number_or(b, "q", -1.0, w);
    if (b.contains("volume_ratio") && !(number(b, "volume_ratio", w) > 1.0)) invalid(w + ": volume_ratio must exceed 1");
    if (b.contains("friction") && !(number(b, "friction", w) >= 1.0)) invalid(w + ": friction must be >= 1");
    if (b.contains("expect_ratio")) positive(b, "expect_ratio", w);
  } else if (c.name == "entropy_table") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    axis(b, "p", w);
    axis(b, "V", w);
    if (!b.contains("out")) invalid(w + ": entropy_table needs \"out\"");
  } else if (c.name == "path") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    gas_state(b, "from", w);
    const auto& segs = field(b, "segments", w);
    if (!segs.is_array() || segs.empty()) invalid(w + ": \"segments\" must be a nonempty array");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      const auto sw = w + ".segments[" + std::to_string(i) + "]";
      if (!s.is_object()) invalid(sw + ": must be an object");
      const auto type = string_field(s, "type", sw);
      if (type == "type1") {
        positive(s, "p", sw);
      } else if (type == "type2") {
        positive(s, "V", sw);
      } else if (type == "type3") {
        positive(s, "V", sw);
        Command tmp{c.index, c.name, s, sw, {}, {}};
        need_atom(plan, tmp, "reservoir", {AtomKind::Reservoir});
        c.atoms.insert(tmp.atoms.begin(), tmp.atoms.end());
      } else {
        invalid(sw + ": unknown segment type \"" + type + "\"");
      }
    }
    if (b.contains("samples")) {
      const double n = number(b, "samples", w);
      if (n < 2 || n > 100000 || n != std::floor(n)) invalid(w + ": samples must be an integer >= 2");
    }
    if (b.contains("expect_work")) number(b, "expect_work", w);
  } else if (c.name == "first_law") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    if (b.contains("grid")) {
      const double n = number(b, "grid", w);
      if (n < 1 || n > 20 || n != std::floor(n)) invalid(w + ": grid must be an integer in [1, 20]");
    }
    if (b.contains("range")) {
      const auto r = numbers(b, "range", 2, w);
      if (!(r[0] > 0 && r[1] >= r[0])) invalid(w + ": range must be [lo, hi] with 0 < lo <= hi");
    }
  } else if (c.name == "max_entropy") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    const double l = number(b, "lambda", w);
    if (!(l > 0 && l < 1)) invalid(w + ": lambda must lie in (0, 1)");
    gas_state(b, "total", w);
    if (b.contains("mode")) {
      const auto m = string_field(b, "mode", w);
      if (m != "full" && m != "energy-only") invalid(w + ": mode must be \"full\" or \"energy-only\"");
    }
  } else if (c.name == "concavity") {
    need_atom(plan, c, "atom", {AtomKind::IdealGas});
    if (b.contains("samples")) {
      const double n = number(b, "samples", w);
      if (n < 1 || n > 1e6 || n != std::floor(n)) invalid(w + ": samples must be a positive integer");
    }
    if (b.contains("box")) {
      const auto box = numbers(b, "box", 4, w);
      if (!(box[1] > box[0] && box[3] > box[2] && box[2] > 0)) invalid(w + ": box must be [Ulo, Uhi, Vlo, Vhi]");
    }
  } else if (c.name == "verify") {
    const auto suite = string_field(b, "suite", w);
    if (!is_suite(suite)) invalid(w + ": unknown suite \"" + suite + "\"");
  } else {
    invalid(w + ": unknown command \"" + c.name + "\"");
  }
  if (b.contains("out")) {
    const auto out = string_field(b, "out", w);
    const std::filesystem::path p(out);
    if (out.empty() || p.is_absolute() || p.lexically_normal().string().rfind("..", 0) == 0) {
      invalid(w + ": \"out\" must be a relative path inside the output directory");
    }
    c.out = p.lexically_normal().string();
  }
}

Plan validate(const Json& doc) {
  if (!doc.is_object()) invalid("scenario must be a JSON object");
  if (!doc.contains("version") || !doc.at("version").is_number_integer() || doc.at("version").get<int>() != 1) {
    invalid("scenario: \"version\" must be 1");
  }
  Plan plan;
  if (doc.contains("reference")) {
    const auto& r = doc.at("reference");
    if (!r.is_object()) invalid("reference: must be an object");
    plan.theta_ref = r.contains("theta") ? positive(r, "theta", "reference") : 1.0;
    plan.t_ref = r.contains("T") ? positive(r, "T", "reference") : 1.0;
  }
  const auto& atoms = field(doc, "atoms", "scenario");
  if (!atoms.is_array()) invalid("scenario: \"atoms\" must be an array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    const auto where = "atoms[" + std::to_string(i) + "]";
    if (!a.is_object()) invalid(where + ": must be an object");
    const auto name = string_field(a, "name", where);
    const auto kind = atom_kind_from_string(string_field(a, "kind", where));
    if (!kind) invalid(where + ": unknown kind");
    if (plan.atoms.count(name)) invalid(where + ": duplicate atom name \"" + name + "\"");
    AtomDecl d{*kind, AbstractModel{}, 0.0};
    if (*kind == AtomKind::IdealGas) {
      d.model = gas_model_from(a, where);
    } else if (*kind == AtomKind::Reservoir) {
      d.model = ReservoirModel{positive(a, "theta", where)};
      d.energy = number_or(a, "E", 0.0, where);
    } else {
      const double dim = number_or(a, "dim", 1.0, where);
      if (dim < 1 || dim > 6 || dim != std::floor(dim)) invalid(where + ": dim must be an integer in [1, 6]");
      d.model = AbstractModel{static_cast<int>(dim)};
    }
    plan.atoms.emplace(name, d);
    plan.atom_order.push_back(name);
  }
  const auto& script = field(doc, "script", "scenario");
  if (!script.is_array()) invalid("scenario: \"script\" must be an array");
  std::set<std::string> outs;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const auto where = "script[" + std::to_string(i) + "]";
    if (!script[i].is_object()) invalid(where + ": must be an object");
    Command c{i, string_field(script[i], "cmd", where), script[i], where, {}, {}};
    validate_command(plan, c);
    if (c.out && !outs.insert(*c.out).second) invalid(where + ": output \"" + *c.out + "\" written twice");
    plan.script.push_back(std::move(c));
  }
  return plan;
}

// ---- execution ------------------------------------------------------------

struct Context {
  World world;
  std::map<std::string, AtomId> ids;
  std::map<std::string, double> energies;
  EnergyLedger energy;
  TemperatureScale scale;
  EntropyLedger entropy;
  ScenarioOptions opts;

  Context(const Plan& plan, const ScenarioOptions& o)
      : energy(world), scale(world, plan.theta_ref, plan.t_ref), entropy(world, energy, scale), opts(o) {
    for (const auto& name : plan.atom_order) {
      const auto& d = plan.atoms.at(name);
      ids.emplace(name, world.add(d.model));
      energies.emplace(name, d.energy);
    }
  }
  AtomId id(const Json& body, const std::string& key) const { return ids.at(body.at(key).get<std::string>()); }
};

struct CommandOutput {
  std::vector<std::string> lines;
  std::vector<std::string> failures;
  std::vector<std::filesystem::path> artifacts;
};

std::string n9(double x) { return io::number(x); }

void expect_value(CommandOutput& out, const Command& c, const std::string& what, double got,
                  const std::string& key = "expect") {
  if (!c.body.contains(key)) return;
  const double want = c.body.at(key).get<double>();
  const double tol = c.body.contains("tol") ? c.body.at("tol").get<double>() : 1e-6;
  if (!(std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want)))) {
    out.failures.push_back(c.where + ": " + what + " = " + n9(got) + ", expected " + n9(want) + " (tol " + n9(tol) +
                           ")");
  }
}

std::filesystem::path open_artifact(const Context& ctx, const Command& c, std::ofstream& os) {
  const auto path = ctx.opts.out_dir / *c.out;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  os.open(path, std::ios::binary);
  if (!os) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  return path;
}

void write_json_artifact(const Context& ctx, const Command& c, const io::Json& j, CommandOutput& out) {
  if (!c.out) return;
  std::ofstream os;
  out.artifacts.push_back(open_artifact(ctx, c, os));
  os << j.dump(2) << '\n';
}

void write_csv_artifact(const Context& ctx, const Command& c, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows, CommandOutput& out) {
  if (!c.out) return;
  std::ofstream os;
  out.artifacts.push_back(open_artifact(ctx, c, os));
  io::write_csv(os, header, rows);
}

CommandOutput execute(Context& ctx, const Command& c) {
  CommandOutput out;
  const auto& b = c.body;
  const auto exec = ctx.opts.parallel ? Execution::Parallel : Execution::Serial;
  if (c.name == "energy") {
    const auto atom = ctx.id(b, "atom");
    const auto s = gas_state(b, "state", c.where);
    const double u = ctx.energy.internal_energy(atom, s);
    out.lines.push_back("energy " + b.at("atom").get<std::string>() + " p=" + n9(s.p) + " V=" + n9(s.V) + " U=" + n9(u));
    expect_value(out, c, "U", u);
  } else if (c.name == "entropy") {
    const auto atom = ctx.id(b, "atom");
    std::optional<double> theta;
    if (b.contains("theta")) theta = b.at("theta").get<double>();
    double s = 0.0;
    std::string at;
    if (atom.kind == AtomKind::IdealGas) {
      const auto g = gas_state(b, "state", c.where);
      s = ctx.entropy.entropy(atom, g, theta);
      at = "p=" + n9(g.p) + " V=" + n9(g.V);
    } else {
      const double e = b.at("state").get<double>();
      s = ctx.entropy.entropy(atom, ReservoirState{e});
      at = "E=" + n9(e);
    }
    out.lines.push_back("entropy " + b.at("atom").get<std::string>() + " " + at + " S=" + n9(s));
    expect_value(out, c, "S", s);
  } else if (c.name == "temperature") {
    const auto atom = ctx.id(b, "reservoir");
    const double t = ctx.scale.of(reservoir_of(ctx.world, atom));
    out.lines.push_back("temperature " + b.at("reservoir").get<std::string>() + " T=" + n9(t));
    expect_value(out, c, "T", t);
  } else if (c.name == "carnot") {
    const auto hot = b.at("hot").get<std::string>();
    const auto cold = b.at("cold").get<std::string>();
    CarnotOptions o;
    o.volume_ratio = number_or(b, "volume_ratio", o.volume_ratio, c.where);
    o.friction_factor = number_or(b, "friction", 1.0, c.where);
    o.e1 = ctx.energies.at(hot);
    o.e2 = ctx.energies.at(cold);
    const auto run = build_carnot(ctx.world, reservoir_of(ctx.world, ctx.ids.at(hot)),
                                  reservoir_of(ctx.world, ctx.ids.at(cold)), number_or(b, "q", -1.0, c.where), o);
    const double ratio = run.q2 != 0.0 ? -run.q1 / run.q2 : 1.0;
    out.lines.push_back("carnot " + hot + " " + cold + " q1=" + n9(run.q1) + " q2=" + n9(run.q2) + " w=" + n9(run.w) +
                        " ratio=" + n9(ratio) + (run.reversible ? " reversible" : " irreversible"));
    expect_value(out, c, "ratio", ratio, "expect_ratio");
    auto j = io::to_json(run);
    j["ratio"] = ratio;
    write_json_artifact(ctx, c, j, out);
  } else if (c.name == "entropy_table") {
    const auto atom = ctx.id(b, "atom");
    const auto& g = ctx.world.gas_model(atom);
    std::vector<GasState> states;
    for (double V : log_axis(axis(b, "V", c.where))) {
      for (double p : log_axis(axis(b, "p", c.where))) states.push_back({p, V});
    }
    const auto rows = map_indexed(
        states.size(),
        [&](std::size_t i) {
          const auto& s = states[i];
          return std::vector<double>{s.p, s.V, ctx.energy.internal_energy(atom, s), ctx.entropy.entropy(atom, s),
                                     ctx.scale.of_theta(ideal_gas::isotherm_theta(g, s))};
        },
        exec);
    write_csv_artifact(ctx, c, {"p", "V", "U", "S", "T_gas"}, rows, out);
    out.lines.push_back("entropy_table " + b.at("atom").get<std::string>() + " rows=" + std::to_string(rows.size()));
  } else if (c.name == "path") {
    const auto atom = ctx.id(b, "atom");
    const auto gas = gas_of(ctx.world, atom);
    auto at = gas_state(b, "from", c.where);
    std::map<std::string, double> energies = ctx.energies;
    std::vector<QuasistaticFamily> parts;
    for (const auto& s : b.at("segments")) {
      const auto type = s.at("type").get<std::string>();
      if (type == "type1") {
        parts.push_back(ideal_gas::type1(gas, at, s.at("p").get<double>()));
      } else if (type == "type2") {
        parts.push_back(ideal_gas::type2(gas, at, s.at("V").get<double>()));
      } else {
        const auto name = s.at("reservoir").get<std::string>();
        const auto r = reservoir_of(ctx.world, ctx.ids.at(name));
        parts.push_back(ideal_gas::type3(gas, r, at, energies.at(name), s.at("V").get<double>()));
        energies[name] = std::get<ReservoirState>(parts.back().final().at(r.atom)).E;
      }
      at = std::get<GasState>(parts.back().final().at(atom));
    }
    const auto family = concat_families(parts);
    const double w = family.work(atom, 0.0, 1.0);
    const double q = family.heat(atom, 0.0, 1.0);
    out.lines.push_back("path " + b.at("atom").get<std::string>() + " segments=" + std::to_string(parts.size()) +
                        " W=" + n9(w) + " Q=" + n9(q) + " final=(" + n9(at.p) + ", " + n9(at.V) + ")" +
                        (family.reversible() ? " reversible" : " irreversible"));
    expect_value(out, c, "W", w, "expect_work");
    if (c.out) {
      const auto samples = static_cast<int>(number_or(b, "samples", 11, c.where));
      std::ofstream os;
      out.artifacts.push_back(open_artifact(ctx, c, os));
      io::write_polyline_csv(os, sample_polyline(family, atom, samples));
    }
  } else if (c.name == "first_law") {
    const auto atom = ctx.id(b, "atom");
    const auto n = static_cast<std::size_t>(number_or(b, "grid", 5, c.where));
    const auto range = b.contains("range") ? numbers(b, "range", 2, c.where) : std::vector<double>{0.25, 4.0};
    const auto grid = log_grid(range[0], range[1], n);
    const GasCatalog catalog(gas_of(ctx.world, atom));
    Rng rng(ctx.opts.seed);
    std::vector<std::pair<StateValue, StateValue>> pairs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      pairs.emplace_back(grid[i], grid[(i + 1) % grid.size()]);
      pairs.emplace_back(grid[i], grid[rng.below(grid.size())]);
    }
    const auto parts = map_indexed(
        pairs.size(), [&](std::size_t i) { return check_first_law(catalog, {pairs[i]}); }, exec);
    FirstLawReport report;
    for (const auto& p : parts) {
      report.pairs_checked += p.pairs_checked;
      report.inconclusive += p.inconclusive;
      report.violations.insert(report.violations.end(), p.violations.begin(), p.violations.end());
    }
    out.lines.push_back("first_law " + b.at("atom").get<std::string>() + " pairs=" +
                        std::to_string(report.pairs_checked) + " violations=" +
                        std::to_string(report.violations.size()) + " inconclusive=" +
                        std::to_string(report.inconclusive));
    if (!report.violations.empty() || report.inconclusive) {
      out.failures.push_back(c.where + ": first-law check found " + std::to_string(report.violations.size()) +
                             " violations and " + std::to_string(report.inconclusive) + " inconclusive pairs");
    }
    write_json_artifact(ctx, c, io::to_json(report), out);
  } else if (c.name == "max_entropy") {
    const auto atom = ctx.id(b, "atom");
    const auto& g = ctx.world.gas_model(atom);
    const double lambda = b.at("lambda").get<double>();
    const auto t = numbers(b, "total", 2, c.where);
    const UVState total{t[0], t[1]};
    const auto mode = b.value("mode", std::string("full")) == "energy-only" ? MaxEntropyMode::EnergyOnly
                                                                             : MaxEntropyMode::Full;
    const auto r = max_entropy_split(g, lambda, total, mode);
    const double s_unc = entropy_uv(g, total);
    out.lines.push_back("max_entropy " + b.at("atom").get<std::string>() + " lambda=" + n9(lambda) + " U1=" +
                        n9(r.part1.U) + " V1=" + n9(r.part1.V) + " S_max=" + n9(r.s_max) + " S=" + n9(s_unc));
    if (std::fabs(r.part1.U - lambda * total.U) > 1e-6 || std::fabs(r.part1.V - lambda * total.V) > 1e-6) {
      out.failures.push_back(c.where + ": maximizer is not the proportional split");
    }
    if (std::fabs(r.s_max - s_unc) > 1e-8) out.failures.push_back(c.where + ": S_max differs from S(U, V)");
    write_csv_artifact(ctx, c, {"lambda", "U", "V", "U1", "V1", "U2", "V2", "S_max", "S_unconstrained"},
                       {{lambda, total.U, total.V, r.part1.U, r.part1.V, r.part2.U, r.part2.V, r.s_max, s_unc}}, out);
  } else if (c.name == "concavity") {
    const auto atom = ctx.id(b, "atom");
    const auto& g = ctx.world.gas_model(atom);
    const auto n = static_cast<std::size_t>(number_or(b, "samples", 1000, c.where));
    UVBox box{g.U0 + 0.1, g.U0 + 10.0, 0.1, 10.0};
    if (b.contains("box")) {
      const auto v = numbers(b, "box", 4, c.where);
      box = {v[0], v[1], v[2], v[3]};
    }
    if (!(box.u_lo > g.U0)) fail(ErrorKind::OutOfDomain, "box reaches below U0");
    const auto r = check_concavity([&](double U, double V) { return entropy_uv(g, {U, V}); }, box, n, ctx.opts.seed);
    out.lines.push_back("concavity " + b.at("atom").get<std::string>() + " samples=" + std::to_string(r.samples) +
                        " violations=" + std::to_string(r.violations) + " min_slack=" + n9(r.min_slack));
    if (r.violations) out.failures.push_back(c.where + ": concavity violated");
    write_csv_artifact(ctx, c, {"samples", "violations", "min_slack"},
                       {{static_cast<double>(r.samples), static_cast<double>(r.violations), r.min_slack}}, out);
  } else if (c.name == "verify") {
    const auto suite = b.at("suite").get<std::string>();
    const auto r = run_suite(suite, ctx.opts.seed, exec);
    out.lines.push_back("verify " + suite + " checks=" + std::to_string(r.checks) +
                        " failures=" + std::to_string(r.failures));
    for (const auto& e : r.counterexamples) out.failures.push_back(c.where + ": " + suite + ": " + e);
    if (!r.passed() && r.counterexamples.empty()) out.failures.push_back(c.where + ": " + suite + " failed");
    write_json_artifact(ctx, c, to_json(r), out);
  }
  return out;
}

// Consecutive commands whose atom sets are pairwise disjoint.
std::vector<std::vector<std::size_t>> batches(const Plan& plan, bool parallel) {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < plan.script.size(); ++i) {
    const auto& atoms = plan.script[i].atoms;
    bool clash = out.empty() || !parallel;
    for (const auto& a : atoms) clash = clash || used.count(a);
    if (clash) {
      out.emplace_back();
      used.clear();
    }
    out.back().push_back(i);
    used.insert(atoms.begin(), atoms.end());
  }
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_commands() { return kCommands; }

ScenarioOutcome run_scenario_text(std::string_view text, const ScenarioOptions& opts) {
  ScenarioOutcome outcome;
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    outcome.exit_code = kExitParse;
    outcome.error = std::string("parse error: ") + e.what();
    return outcome;
  }
  Plan plan;
  try {
    plan = validate(doc);
  } catch (const ValidationError& e) {
    outcome.exit_code = kExitValidation;
    outcome.error = std::string("validation error: ") + e.what();
    return outcome;
  }
  try {
    Context ctx(plan, opts);
    for (const auto& batch : batches(plan, opts.parallel)) {
      const auto results = map_indexed(
          batch.size(), [&](std::size_t i) { return execute(ctx, plan.script[batch[i]]); },
          opts.parallel ? Execution::Parallel : Execution::Serial);
      for (const auto& r : results) {
        outcome.lines.insert(outcome.lines.end(), r.lines.begin(), r.lines.end());
        outcome.failures.insert(outcome.failures.end(), r.failures.begin(), r.failures.end());
        outcome.artifacts.insert(outcome.artifacts.end(), r.artifacts.begin(), r.artifacts.end());
      }
    }
  } catch (const Error& e) {
    outcome.exit_code = kExitValidation;
    outcome.error = "validation error: " + std::string(to_string(e.kind())) + ": " + e.what();
    return outcome;
  } catch (const std::exception& e) {
    outcome.exit_code = kExitValidation;
    outcome.error = std::string("validation error: ") + e.what();
    return outcome;
  }
  outcome.exit_code = outcome.failures.empty() ? kExitOk : kExitAssertion;
  return outcome;
}

ScenarioOutcome run_scenario_file(const std::filesystem::path& path, const ScenarioOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ScenarioOutcome outcome;
    outcome.exit_code = kExitParse;
    outcome.error = "parse error: cannot read " + path.string();
    return outcome;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return run_scenario_text(ss.str(), opts);
}

}  // namespace thermo
