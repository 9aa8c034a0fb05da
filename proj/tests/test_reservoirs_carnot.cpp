#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thermo/carnot.hpp"
#include "thermo/errors.hpp"
#include "thermo/io.hpp"
#include "thermo/random.hpp"

using namespace thermo;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("reservoir axioms on isothermal contacts") {
  World world;
  const auto gas = add_gas(world);
  const auto r = add_reservoir(world, 1.0);
  const auto regenerate = [&](double e0) { return ideal_gas::type3(gas, r, {1, 1}, e0, 2).whole(); };
  const auto report = check_reservoir_axioms(r, regenerate, 0.0, 5.0, 1e-12);
  CHECK(report.work_nonnegative);
  CHECK(report.translation_invariant);
}

TEST_CASE("second law: friction heat dumped into a reservoir") {
  World world;
  const auto gas = add_gas(world);
  const auto r = add_reservoir(world, 1.0);
  const auto heat_up = ideal_gas::type1(gas, {1, 1}, 2).whole();
  const auto cool = ideal_gas::reservoir_conduction(gas, {2, 1}, 1.0, r, 0.0);
  const auto p = concatenate(heat_up, cool);
  const auto v = check_second_law(r, System{gas.atom}, p);
  CHECK(v.pass);
  CHECK(v.work == doctest::Approx(1.5));
  CHECK(v.reservoir_heat == doctest::Approx(1.5));
}

TEST_CASE("second law: identity and a forged footprint") {
  World world;
  const auto gas = add_gas(world);
  const auto r = add_reservoir(world, 1.0);
  const JointState s{{gas.atom, GasState{1, 1}}, {r.atom, ReservoirState{0}}};
  const auto id = make_identity(System{gas.atom, r.atom}, s);
  const auto v = check_second_law(r, System{gas.atom}, id);
  CHECK(v.pass);
  CHECK(v.work == 0.0);

  const Process forged({{{gas.atom, GasState{1, 1}}, {gas.atom, GasState{1, 1}}, -0.5},
                        {{r.atom, ReservoirState{0}}, {r.atom, ReservoirState{-0.5}}, 0.0}});
  CHECK_FALSE(check_second_law(r, System{gas.atom}, forged).pass);

  const auto open = ideal_gas::type3(gas, r, {1, 1}, 0.0, 2).whole();
  CHECK(kind_of([&] { check_second_law(r, System{gas.atom}, open); }) == ErrorKind::PreconditionNotMet);
}

TEST_CASE("Carnot engine between 2 and 1") {
  World world;
  const auto r1 = add_reservoir(world, 2.0);
  const auto r2 = add_reservoir(world, 1.0);
  const auto run = build_carnot(world, r1, r2, -2.0);
  CHECK(run.q1 == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(run.q2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(run.w == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(run.w == doctest::Approx(run.q1 + run.q2).epsilon(1e-12));
  CHECK(-run.q1 / run.q2 == doctest::Approx(oracle::carnot_ratio(2, 1)).epsilon(1e-9));
  CHECK(run.reversible);
  CHECK(is_reversible(run.process));
  CHECK(classify(System{run.machine.atom}, run.process).cyclic);
  CHECK(run.segments.size() == 4);

  double w = 0;
  for (const auto& s : run.segments) w += s.work;
  CHECK(w == doctest::Approx(run.w).epsilon(1e-10));

  const auto j = io::to_json(run);
  CHECK(j["theta1"] == 2.0);
  CHECK(j["segments"].size() == 4);
}

TEST_CASE("Carnot edge cases") {
  World world;
  const auto r1 = add_reservoir(world, 2.0);
  const auto r2 = add_reservoir(world, 2.0);
  const auto zero = build_carnot(world, r1, r2, 0.0);
  CHECK(zero.q1 == 0.0);
  CHECK(zero.q2 == 0.0);
  CHECK(zero.w == 0.0);

  const auto eq = build_carnot(world, r1, r2, -1.0);
  CHECK(-eq.q1 / eq.q2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(eq.w) < 1e-9);
  CHECK(kind_of([&] { build_carnot(world, r1, r1, -1.0); }) == ErrorKind::SameReservoir);
}

TEST_CASE("temperature ratio") {
  World world;
  const auto r3 = add_reservoir(world, 3.0);
  const auto r1 = add_reservoir(world, 1.0);
  CHECK(temperature_ratio(world, r3, r1) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(temperature_ratio(world, r3, r3) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(temperature_ratio(world, r1, r3) * temperature_ratio(world, r3, r1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("absolute temperature") {
  World world;
  const auto ref = add_reservoir(world, 1.0);
  const auto r = add_reservoir(world, 2.0);
  const auto mid = add_reservoir(world, 0.37);
  CHECK(absolute_temperature(world, r, ref, 273.16) == doctest::Approx(546.32).epsilon(1e-9));
  CHECK(absolute_temperature(world, ref, ref, 273.16) == doctest::Approx(273.16).epsilon(1e-9));
  const double chained = temperature_ratio(world, r, mid) * absolute_temperature(world, mid, ref, 273.16);
  CHECK(chained == doctest::Approx(546.32).epsilon(1e-6));
  CHECK(kind_of([&] { absolute_temperature(world, r, ref, 0.0); }) == ErrorKind::InvalidArgument);

  const TemperatureScale scale(world, 1.0, 273.16);
  CHECK(scale.of(r) == doctest::Approx(546.32).epsilon(1e-9));
  CHECK(scale.of_theta(0.5) == doctest::Approx(136.58).epsilon(1e-9));
}

TEST_CASE("thermal equilibrium is an equivalence relation") {
  World world;
  const auto a = add_reservoir(world, 1.7);
  const auto b = add_reservoir(world, 1.7);
  const auto c = add_reservoir(world, 1.7);
  const auto d = add_reservoir(world, 1.0);
  const auto e = add_reservoir(world, 2.0);
  CHECK(same_temperature(world, a, b));
  CHECK(same_temperature(world, a, a));
  CHECK(same_temperature(world, b, a));
  CHECK(same_temperature(world, b, c));
  CHECK(same_temperature(world, a, c));
  CHECK_FALSE(same_temperature(world, d, e));
}

TEST_CASE("universality across working gases") {
  World world;
  const auto r1 = add_reservoir(world, 2.7);
  const auto r2 = add_reservoir(world, 1.1);
  std::vector<double> ratios;
  for (double n : {0.5, 1.0, 2.0}) {
    for (double vr : {1.5, 2.0, 4.0}) {
      CarnotOptions o;
      o.volume_ratio = vr;
      o.R = n;
      const auto run = build_carnot(world, r1, r2, -1.0, o);
      ratios.push_back(-run.q1 / run.q2);
    }
  }
  for (double x : ratios) CHECK(x == doctest::Approx(ratios.front()).epsilon(1e-6));
  CHECK(ratios.front() == doctest::Approx(2.7 / 1.1).epsilon(1e-6));
}

TEST_CASE("friction makes an engine worse") {
  World world;
  const auto r1 = add_reservoir(world, 2.0);
  const auto r2 = add_reservoir(world, 1.0);
  CarnotOptions o;
  o.friction_factor = 1.3;
  const auto run = build_carnot(world, r1, r2, -1.0, o);
  CHECK_FALSE(run.reversible);
  CHECK(-run.q1 / run.q2 < 2.0 - 1e-6);
  CHECK(std::max(run.q1, run.q2) > 0);
  CHECK(classify(System{run.machine.atom}, run.process).cyclic);
}

TEST_CASE("reversible runs have opposite heat flows") {
  World world;
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto a = add_reservoir(world, rng.log_uniform(0.2, 5));
    const auto b = add_reservoir(world, rng.log_uniform(0.2, 5));
    const auto run = build_carnot(world, a, b, rng.uniform(-3, 3));
    CHECK(run.q1 * run.q2 < 0);
  }
}
