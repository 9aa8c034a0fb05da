#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thermo/errors.hpp"
#include "thermo/ideal_gas.hpp"

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

GasState end_of(const Process& p, AtomId a) { return std::get<GasState>(p.final(a)); }

}  // namespace

TEST_CASE("type 1: friction raises the pressure at fixed volume") {
  World world;
  const auto gas = add_gas(world);
  const auto f = ideal_gas::type1(gas, {1, 1}, 2);
  CHECK(f.work(gas.atom, 0, 1) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.heat(gas.atom, 0, 1) == 0.0);
  CHECK_FALSE(f.reversible());
  CHECK(is_identity(ideal_gas::type1(gas, {1, 1}, 1).whole()));
  CHECK(kind_of([&] { ideal_gas::type1(gas, {1, 1}, 0.5); }) == ErrorKind::PressureDecrease);
}

TEST_CASE("type 2: adiabat") {
  World world;
  const auto gas = add_gas(world);
  const auto p = ideal_gas::type2(gas, {1, 1}, 2).whole();
  CHECK(end_of(p, gas.atom).p == doctest::Approx(0.3149802625).epsilon(1e-9));
  CHECK(p.work(gas.atom) == doctest::Approx(-0.5550552).epsilon(1e-5));
  CHECK(p.work(gas.atom) == doctest::Approx(oracle::adiabat_work(1, 1, 2)).epsilon(1e-10));
  CHECK(is_identity(ideal_gas::type2(gas, {1, 1}, 1).whole()));
  CHECK(is_identity(concatenate(p, reverse_of(p)), 1e-12, 1e-12));
}

TEST_CASE("type 3: isothermal reservoir contact") {
  World world;
  const auto gas = add_gas(world);
  const auto r = add_reservoir(world, 1.0);
  const auto f = ideal_gas::type3(gas, r, {1, 1}, 0.0, 2);
  CHECK(f.heat(gas.atom, 0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(f.work(gas.atom, 0, 1) == doctest::Approx(-std::log(2.0)).epsilon(1e-10));
  const auto p = f.whole();
  CHECK(p.work(r.atom) == 0.0);
  CHECK(std::get<ReservoirState>(p.final(r.atom)).E == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(is_identity(ideal_gas::type3(gas, r, {1, 1}, 0.0, 1).whole()));
  CHECK(kind_of([&] { ideal_gas::type3(gas, r, {2, 1}, 0.0, 2); }) == ErrorKind::OffIsotherm);
}

TEST_CASE("closed forms") {
  GasModel g;
  CHECK(ideal_gas::oracle::energy(g, {2, 3}) == doctest::Approx(9.0));
  CHECK(ideal_gas::oracle::entropy(g, {1, 2}) == doctest::Approx(2.5 * std::log(2.0)));
  CHECK(ideal_gas::oracle::temperature(g, {2, 3}) == doctest::Approx(6.0));
  CHECK(ideal_gas::oracle::energy(g, {2, 3}) == doctest::Approx(oracle::gas_U(2, 3)));
  g.gamma = 1.4;
  g.n = 2;
  CHECK(ideal_gas::oracle::entropy(g, {1.7, 0.3}) == doctest::Approx(oracle::gas_S(1.7, 0.3, 2, 1.4)));
  const double S = ideal_gas::oracle::entropy(g, {1.7, 0.3});
  CHECK(ideal_gas::oracle::energy_from_entropy(g, S, 0.3) == doctest::Approx(oracle::gas_U(1.7, 0.3, 1.4)));
}

TEST_CASE("connect orients by the adiabat invariant") {
  World world;
  const auto gas = add_gas(world);
  const GasState a{1, 1}, b{3, 0.5};
  const auto p = ideal_gas::connect(gas, a, b);
  // 3 * 0.5^(5/3) < 1: b lies on the lower adiabat, so the process runs b → a.
  REQUIRE(3 * std::pow(0.5, 5.0 / 3.0) < 1.0);
  CHECK(same_state(p.initial(gas.atom), b, 1e-12));
  CHECK(same_state(p.final(gas.atom), a, 1e-12));
  CHECK(p.work(gas.atom) == doctest::Approx(oracle::gas_U(1, 1) - oracle::gas_U(3, 0.5)).epsilon(1e-10));
  CHECK(is_identity(ideal_gas::connect(gas, a, a)));
  const GasState c{oracle::adiabat_p(1, 1, 2), 2};
  const auto q = ideal_gas::connect(gas, a, c);
  CHECK(q.has_tag("connect"));
  CHECK(ideal_gas::connect_family(gas, a, c).curve().segment_count() == 1);
  CHECK(is_reversible(q));
}

TEST_CASE("connect_reversible carries heat only on the middle segment") {
  World world;
  const auto gas = add_gas(world);
  const auto r = add_reservoir(world, 1.0);
  const auto parts = ideal_gas::connect_reversible(gas, {1, 1}, {1, 2}, r);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].heat(gas.atom, 0, 1) == 0.0);
  CHECK(parts[2].heat(gas.atom, 0, 1) == 0.0);
  CHECK(parts[1].heat(gas.atom, 0, 1) / 1.0 == doctest::Approx(2.5 * std::log(2.0)).epsilon(1e-10));
  for (const auto& f : parts) CHECK(f.reversible());

  const auto r2 = add_reservoir(world, 3.7);
  const auto other = ideal_gas::connect_reversible(gas, {1, 1}, {1, 2}, r2);
  CHECK(other[1].heat(gas.atom, 0, 1) / 3.7 == doctest::Approx(parts[1].heat(gas.atom, 0, 1)).epsilon(1e-9));

  const auto same = ideal_gas::connect_reversible(gas, {1.5, 2}, {1.5, 2}, r);
  CHECK(std::fabs(same[1].heat(gas.atom, 0, 1)) < 1e-12);
}

TEST_CASE("adiabats are isentropic in the closed form") {
  GasModel g;
  for (double V2 : {0.3, 1.7, 5.0}) {
    const GasState a{1.2, 0.8};
    const GasState b{oracle::adiabat_p(a.p, a.V, V2), V2};
    CHECK(std::fabs(ideal_gas::oracle::entropy(g, a) - ideal_gas::oracle::entropy(g, b)) < 1e-9);
  }
}

TEST_CASE("T equals dU/dS at fixed V") {
  GasModel g;
  for (const GasState s : {GasState{1, 1}, GasState{0.4, 3}, GasState{2.5, 0.6}}) {
    const double S = ideal_gas::oracle::entropy(g, s);
    const double h = 1e-5;
    const double dUdS = (ideal_gas::oracle::energy_from_entropy(g, S + h, s.V) -
                         ideal_gas::oracle::energy_from_entropy(g, S - h, s.V)) /
                        (2 * h);
    CHECK(dUdS == doctest::Approx(oracle::gas_T(s.p, s.V)).epsilon(1e-4));
  }
}

TEST_CASE("conduction between gases") {
  World world;
  const auto a = add_gas(world);
  const auto b = add_gas(world);
  const auto p = ideal_gas::conduction(a, {2, 1}, b, {1, 1}, 0.3);
  CHECK(p.work(a.atom) == 0.0);
  CHECK(oracle::gas_U(end_of(p, a.atom).p, 1) == doctest::Approx(oracle::gas_U(2, 1) - 0.3));
  CHECK(kind_of([&] { ideal_gas::conduction(a, {1, 1}, b, {2, 1}, 0.3); }) == ErrorKind::PreconditionNotMet);
}

TEST_CASE("states outside the quadrant are domain errors") {
  World world;
  const auto gas = add_gas(world);
  CHECK(kind_of([&] { ideal_gas::type2(gas, {-1, 1}, 2); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { ideal_gas::type2(gas, {1, 1e-13}, 2); }) == ErrorKind::DomainError);
}

TEST_CASE("non-monatomic gamma") {
  World world;
  GasModel m;
  m.gamma = 1.4;
  const auto gas = add_gas(world, m);
  const auto p = ideal_gas::type2(gas, {1, 1}, 2).whole();
  CHECK(p.work(gas.atom) == doctest::Approx(oracle::adiabat_work(1, 1, 2, 1.4)).epsilon(1e-10));
  CHECK(ideal_gas::type1(gas, {1, 1}, 2).work(gas.atom, 0, 1) == doctest::Approx(2.5).epsilon(1e-12));
}
