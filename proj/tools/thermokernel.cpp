#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "json.hpp"
#include "thermo/scenario.hpp"
#include "thermo/tolerance.hpp"
#include "thermo/verify.hpp"

namespace {

int run_command(const std::string& file, const thermo::ScenarioOptions& opts) {
  const auto outcome = thermo::run_scenario_file(file, opts);
  for (const auto& line : outcome.lines) std::cout << line << '\n';
  for (const auto& f : outcome.failures) std::cerr << "FAIL " << f << '\n';
  for (const auto& a : outcome.artifacts) std::cout << "wrote " << a.string() << '\n';
  if (!outcome.error.empty()) std::cerr << outcome.error << '\n';
  return outcome.exit_code;
}

int verify_command(const std::string& selector, std::uint64_t seed, bool serial, bool json) {
  std::vector<std::string> suites;
  if (selector == "all") {
    suites = thermo::suite_names();
  } else if (thermo::is_suite(selector)) {
    suites = {selector};
  } else {
    std::cerr << "unknown suite \"" << selector << "\"; expected one of: all";
    for (const auto& s : thermo::suite_names()) std::cerr << ", " << s;
    std::cerr << '\n';
    return thermo::kExitParse;
  }
  const auto exec = serial ? thermo::Execution::Serial : thermo::Execution::Parallel;
  bool ok = true;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& name : suites) {
    const auto r = thermo::run_suite(name, seed, exec);
    ok = ok && r.passed();
    if (json) {
      all.push_back(thermo::to_json(r));
      continue;
    }
    std::cout << (r.passed() ? "PASS " : "FAIL ") << name << " checks=" << r.checks << " failures=" << r.failures
              << '\n';
    for (const auto& c : r.counterexamples) std::cout << "  " << c << '\n';
  }
  if (json) std::cout << all.dump(2) << '\n';
  return ok ? thermo::kExitOk : thermo::kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("THERMOKERNEL_TOL")) {
    if (!thermo::parse_tolerance_override(env, {})) {
      std::cerr << "malformed THERMOKERNEL_TOL: \"" << env << "\"\n";
      return thermo::kExitValidation;
    }
  }

  CLI::App app{"thermokernel: axiomatic thermodynamics engine"};
  app.require_subcommand(1);

  thermo::ScenarioOptions opts;
  std::string file;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "execute a JSON scenario");
  run->add_option("file", file, "scenario file")->required();
  run->add_option("--out", out_dir, "artifact directory");
  run->add_option("--seed", opts.seed, "seed for randomized commands");
  run->add_flag("--parallel", opts.parallel, "run commands on disjoint atoms concurrently");

  std::string suite;
  std::uint64_t seed = thermo::kDefaultSeed;
  bool serial = false;
  bool json = false;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "suite name or \"all\"")->required();
  verify->add_option("--seed", seed, "seed for random cases");
  verify->add_flag("--serial", serial, "use the serial reference kernels");
  verify->add_flag("--json", json, "print the reports as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return thermo::kExitParse;
  }

  if (run->parsed()) {
    opts.out_dir = out_dir;
    return run_command(file, opts);
  }
  return verify_command(suite, seed, serial, json);
}
