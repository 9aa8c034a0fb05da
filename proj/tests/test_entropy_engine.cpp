#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thermo/entropy.hpp"
#include "thermo/errors.hpp"

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

struct Lab {
  World world;
  Gas gas = add_gas(world);
  EnergyLedger energy{world};
  TemperatureScale scale{world};
  EntropyLedger entropy{world, energy, scale};

  GasState end(const QuasistaticFamily& f) const { return std::get<GasState>(f.final().at(gas.atom)); }
  double heat(const Process& p) const { return heat_of(energy, System{gas.atom}, p); }
  HeatFlowRecord contact(const QuasistaticFamily& f, const Reservoir& r) const {
    auto p = f.whole();
    const double q = heat(p);
    return {std::move(p), q, scale.of(r)};
  }
  static HeatFlowRecord work(const QuasistaticFamily& f) { return {f.whole(), 0.0, std::nullopt}; }
};

}  // namespace

TEST_CASE("temperature of reversible isothermal heat") {
  Lab lab;
  const auto r = add_reservoir(lab.world, 1.5);
  const auto p = ideal_gas::type3(lab.gas, r, {1.5, 1}, 0.0, 2).whole();
  const auto t = assign_heat_temperature(lab.energy, lab.scale, System{r.atom}, System{lab.gas.atom}, p);
  CHECK(t.singleton());
  CHECK(t.lo == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("direct conduction spans the contact temperatures") {
  Lab lab;
  const auto cold = add_gas(lab.world);
  const auto p = ideal_gas::conduction(lab.gas, {2, 1}, cold, {1, 1}, 0.2);
  const auto t = assign_heat_temperature(lab.energy, lab.scale, System{lab.gas.atom}, System{cold.atom}, p);
  CHECK(t.lo == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t.hi == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(t.contains(1.5));
}

TEST_CASE("zero heat has no temperature") {
  Lab lab;
  const auto other = add_gas(lab.world);
  const auto p = join(ideal_gas::type2(lab.gas, {1, 1}, 2).whole(), ideal_gas::type2(other, {1, 1}, 0.5).whole());
  CHECK(kind_of([&] {
          assign_heat_temperature(lab.energy, lab.scale, System{lab.gas.atom}, System{other.atom}, p);
        }) == ErrorKind::ZeroHeat);
}

TEST_CASE("Clausius sum of a reversible cycle vanishes") {
  Lab lab;
  const auto hot = add_reservoir(lab.world, 2.0);
  const auto cold = add_reservoir(lab.world, 1.0);
  const auto a = ideal_gas::type3(lab.gas, hot, {2, 1}, 0.0, 2);
  const double v_cold = 2 * std::pow(2.0, 1.5);
  const auto b = ideal_gas::type2(lab.gas, lab.end(a), v_cold);
  const auto c = ideal_gas::type3(lab.gas, cold, lab.end(b), 0.0, v_cold / 2);
  const auto d = ideal_gas::type2_to(lab.gas, lab.end(c), {2, 1});
  const std::vector<HeatFlowRecord> records{lab.contact(a, hot), Lab::work(b), lab.contact(c, cold), Lab::work(d)};
  CHECK(std::fabs(clausius_sum(System{lab.gas.atom}, records)) < 1e-8);
}

TEST_CASE("friction makes the Clausius sum negative") {
  Lab lab;
  const auto hot = add_reservoir(lab.world, 2.0);
  const auto cold = add_reservoir(lab.world, 1.0);
  // Expand at Θ = 1, heat up by friction at fixed V, dump heat at Θ = 2,
  // and return along the adiabat.
  const auto a = ideal_gas::type3(lab.gas, cold, {1, 1}, 0.0, 2);
  const auto b = ideal_gas::type1(lab.gas, lab.end(a), 1.0);  // pV = 2
  const double v_back = std::pow(2.0, -1.5);                  // adiabat through (1, 1) at pV = 2
  const auto c = ideal_gas::type3(lab.gas, hot, lab.end(b), 0.0, v_back);
  const auto d = ideal_gas::type2_to(lab.gas, lab.end(c), {1, 1});
  const std::vector<HeatFlowRecord> records{lab.contact(a, cold), Lab::work(b), lab.contact(c, hot), Lab::work(d)};
  const double expected = std::log(2.0) / 1.0 + 2.0 * std::log(v_back / 2.0) / 2.0;
  const double sum = clausius_sum(System{lab.gas.atom}, records);
  CHECK(sum == doctest::Approx(expected).epsilon(1e-9));
  CHECK(sum < -1e-8);
}

TEST_CASE("Clausius sum preconditions") {
  Lab lab;
  CHECK(clausius_sum(System{lab.gas.atom}, {}) == 0.0);
  const auto r = add_reservoir(lab.world, 1.0);
  const auto a = ideal_gas::type3(lab.gas, r, {1, 1}, 0.0, 2);
  CHECK(kind_of([&] { clausius_sum(System{lab.gas.atom}, {lab.contact(a, r)}); }) == ErrorKind::NotCyclic);
  auto rec = lab.contact(a, r);
  rec.temperature.reset();
  auto back = lab.contact(a.reversed(), r);
  CHECK(kind_of([&] { clausius_sum(System{lab.gas.atom}, {rec, back}); }) == ErrorKind::UnassignedTemperature);
}

TEST_CASE("gas entropy from reversible contacts") {
  Lab lab;
  CHECK(lab.entropy.entropy(lab.gas.atom, GasState{1, 2}) == doctest::Approx(1.7328680).epsilon(1e-7));
  CHECK(lab.entropy.entropy(lab.gas.atom, GasState{1, 2}) == doctest::Approx(oracle::gas_S(1, 2)).epsilon(1e-12));
  CHECK(std::fabs(lab.entropy.entropy(lab.gas.atom, GasState{1, 1})) < 1e-12);
  for (double theta : {0.3, 1.0, 4.2}) {
    CHECK(lab.entropy.entropy(lab.gas.atom, GasState{2.3, 0.4}, theta) ==
          doctest::Approx(oracle::gas_S(2.3, 0.4)).epsilon(1e-10));
  }
}

TEST_CASE("entropy of a joint state is the sum of its parts") {
  Lab lab;
  GasModel m;
  m.n = 2.0;
  m.S0 = 0.7;
  const auto other = add_gas(lab.world, m);
  const JointState s{{lab.gas.atom, GasState{1, 2}}, {other.atom, GasState{3, 0.5}}};
  CHECK(lab.entropy.entropy(System{lab.gas.atom, other.atom}, s) ==
        doctest::Approx(oracle::gas_S(1, 2) + oracle::gas_S(3, 0.5, 2.0, 5.0 / 3.0, 1, 1, 0.7)).epsilon(1e-10));
}

TEST_CASE("reservoir entropy is E over T") {
  Lab lab;
  const auto r = add_reservoir(lab.world, 2.0);
  CHECK(lab.entropy.entropy(r.atom, ReservoirState{3.0}) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(lab.entropy.entropy(r.atom, ReservoirState{-1.0}) == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("Entropy Theorem") {
  Lab lab;
  const System s{lab.gas.atom};
  const auto friction = check_entropy_theorem(lab.entropy, s, ideal_gas::type1(lab.gas, {1, 1}, 2).whole());
  CHECK(friction.pass);
  CHECK(friction.delta == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(friction.reversible);

  const auto adiabat = check_entropy_theorem(lab.entropy, s, ideal_gas::type2(lab.gas, {1, 1}, 2).whole());
  CHECK(adiabat.pass);
  CHECK(adiabat.reversible);
  CHECK(std::fabs(adiabat.delta) < 1e-12);

  const Process forged({{{lab.gas.atom, GasState{2, 1}}, {lab.gas.atom, GasState{1, 1}}, -1.5}});
  const auto v = check_entropy_theorem(lab.entropy, s, forged);
  CHECK_FALSE(v.pass);
  CHECK(v.delta < 0);

  const auto r = add_reservoir(lab.world, 1.0);
  CHECK(kind_of([&] { check_entropy_theorem(lab.entropy, s, ideal_gas::type3(lab.gas, r, {1, 1}, 0, 2).whole()); }) ==
        ErrorKind::NotWorkProcess);
}

TEST_CASE("same state change, different reversible routes: equal Q/T") {
  Lab lab;
  const auto r = add_reservoir(lab.world, 1.0);
  const auto r2 = add_reservoir(lab.world, 3.0);
  const auto direct = ideal_gas::type3(lab.gas, r, {1, 1}, 0.0, 2);
  const auto routed = ideal_gas::connect_reversible(lab.gas, {1, 1}, lab.end(direct), r2);
  const double q = lab.heat(direct.whole());
  const double q2 = lab.heat(routed[1].whole());
  CHECK(q / 1.0 == doctest::Approx(q2 / 3.0).epsilon(1e-6));
}

TEST_CASE("zero net heat still changes the entropy") {
  Lab lab;
  const auto t1 = add_reservoir(lab.world, 1.0);
  const auto t2 = add_reservoir(lab.world, 2.0);
  // Compress at Θ = 1, climb the adiabat to Θ = 2, expand there until the
  // net heat is zero.
  const auto a = ideal_gas::type3(lab.gas, t1, {1, 1}, 0.0, 0.5);
  const auto up = lab.end(a);
  const double v2 = up.V * std::pow(0.5, 1.5);
  const auto b = ideal_gas::type2(lab.gas, up, v2);
  const double q1 = lab.heat(a.whole());
  const double v3 = v2 * std::exp(-q1 / 2.0);
  const auto c = ideal_gas::type3(lab.gas, t2, lab.end(b), 0.0, v3);
  const double q2 = lab.heat(c.whole());
  CHECK(q1 + q2 == doctest::Approx(0.0).epsilon(1e-9));

  const double per_segment = q1 / lab.scale.of(t1) + q2 / lab.scale.of(t2);
  const auto fin = lab.end(c);
  CHECK(per_segment == doctest::Approx(oracle::gas_S(fin.p, fin.V) - oracle::gas_S(1, 1)).epsilon(1e-9));
  CHECK(per_segment < 0);
  CHECK(lab.entropy.entropy(lab.gas.atom, fin) == doctest::Approx(per_segment).epsilon(1e-9));
}

TEST_CASE("entropy sequences are reversible contacts and pure work") {
  Lab lab;
  const auto seq = lab.entropy.sequence(lab.gas.atom, GasState{1, 1}, GasState{2, 3}, 1.7);
  REQUIRE(seq.size() == 3);
  CHECK_FALSE(seq[0].temperature);
  CHECK(seq[1].temperature == doctest::Approx(1.7));
  CHECK_FALSE(seq[2].temperature);
  for (const auto& r : seq) CHECK(is_reversible(r.process));
}
