#include "doctest.h"

#include "thermo/errors.hpp"
#include "thermo/ideal_gas.hpp"
#include "thermo/system.hpp"

using namespace thermo;

namespace {

struct Atoms {
  World world;
  AtomId a1 = world.add_abstract();
  AtomId a2 = world.add_abstract();
  AtomId a3 = world.add_abstract();
};

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

TEST_CASE("compose is set union") {
  Atoms w;
  CHECK(compose(System{w.a1}, System{w.a2}) == System{w.a1, w.a2});
  CHECK(compose(System{w.a1, w.a2}, System{w.a2, w.a3}) == System{w.a1, w.a2, w.a3});
  const System s{w.a1, w.a3};
  CHECK(compose(s, s) == s);
  CHECK(compose(System{w.a3}, System{w.a1}) == compose(System{w.a1}, System{w.a3}));
}

TEST_CASE("intersect returns the common part or the disjoint marker") {
  Atoms w;
  const auto i = intersect(System{w.a1, w.a2}, System{w.a2, w.a3});
  REQUIRE(i);
  CHECK(*i == System{w.a2});
  CHECK_FALSE(intersect(System{w.a1}, System{w.a2}));
  CHECK(disjoint(System{w.a1}, System{w.a2}));
  const System s{w.a1, w.a2};
  CHECK(*intersect(s, s) == s);
}

TEST_CASE("atoms and subsystems") {
  Atoms w;
  const System s{w.a1, w.a2};
  const auto atoms = atoms_of(s);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0] == System{w.a1});
  CHECK(atoms[1] == System{w.a2});
  const auto subs = subsystems(s);
  CHECK(subs.size() == 3);
  CHECK(std::find(subs.begin(), subs.end(), s) != subs.end());
  CHECK(is_subsystem(System{w.a2}, s));
  CHECK_FALSE(is_subsystem(System{w.a3}, s));
}

TEST_CASE("subsystem enumeration is capped at 16 atoms") {
  World world;
  std::vector<AtomId> ids;
  for (int i = 0; i < 17; ++i) ids.push_back(world.add_abstract());
  CHECK(kind_of([&] { subsystems(System(ids)); }) == ErrorKind::SizeLimit);
  ids.pop_back();
  CHECK(subsystems(System(ids)).size() == (1u << 16) - 1);
}

TEST_CASE("disjoint complement") {
  Atoms w;
  CHECK(disjoint_complement(System{w.a1, w.a2, w.a3}, System{w.a2}) == System{w.a1, w.a3});
  CHECK(kind_of([&] { disjoint_complement(System{w.a1, w.a2}, System{w.a1, w.a2}); }) ==
        ErrorKind::NotProperSubsystem);
  CHECK(kind_of([&] { disjoint_complement(System{w.a1, w.a2}, System{w.a3}); }) == ErrorKind::NotProperSubsystem);
}

TEST_CASE("empty systems are rejected") {
  CHECK_THROWS_AS(System(std::vector<AtomId>{}), Error);
}

TEST_CASE("world registry and model bindings") {
  World world;
  GasModel g;
  g.n = 2.5;
  const auto gas = world.add_gas(g);
  const auto r = world.add_reservoir({3.0});
  CHECK(gas.kind == AtomKind::IdealGas);
  CHECK(r.kind == AtomKind::Reservoir);
  CHECK(world.gas_model(gas).n == 2.5);
  CHECK(world.reservoir_theta(r) == 3.0);
  CHECK(world.size() == 2);
  CHECK(world.contains(gas));
  CHECK(to_string(AtomKind::IdealGas) == "ideal-gas");
  CHECK(atom_kind_from_string("reservoir") == AtomKind::Reservoir);
  CHECK_FALSE(atom_kind_from_string("plasma"));
}

TEST_CASE("clone of a gas atom keeps kind and model") {
  World world;
  GasModel g;
  g.n = 1.7;
  const auto a = world.add_gas(g);
  const auto [copy, map] = clone_system(world, System{a});
  REQUIRE(copy.size() == 1);
  const auto a2 = map.at(a);
  CHECK(a2 != a);
  CHECK(a2.kind == AtomKind::IdealGas);
  CHECK(world.gas_model(a2).n == 1.7);
  CHECK(disjoint(System{a}, copy));
}

TEST_CASE("clone of a two-atom system is a bijection") {
  Atoms w;
  const auto [copy, map] = clone_system(w.world, System{w.a1, w.a2});
  CHECK(copy.size() == 2);
  CHECK(map.size() == 2);
  CHECK(copy.contains(map.at(w.a1)));
  CHECK(copy.contains(map.at(w.a2)));
  CHECK(disjoint(copy, System{w.a1, w.a2}));
}

TEST_CASE("work of a cloned type-2 process matches the original") {
  World world;
  const auto gas = add_gas(world);
  const auto [copy, map] = clone_system(world, System{gas.atom});
  const auto twin = gas_of(world, map.at(gas.atom));
  const auto p = ideal_gas::type2(gas, {1, 1}, 2).whole();
  const auto q = ideal_gas::type2(twin, {1, 1}, 2).whole();
  CHECK(q.work(twin.atom) == p.work(gas.atom));
  CHECK(same_state(q.final(twin.atom), p.final(gas.atom), 0.0));
}
