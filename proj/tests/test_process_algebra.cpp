#include "doctest.h"

#include "thermo/carnot.hpp"
#include "thermo/errors.hpp"
#include "thermo/ideal_gas.hpp"
#include "thermo/io.hpp"
#include "thermo/process.hpp"

using namespace thermo;

namespace {

struct Fixture {
  World world;
  AtomId a1 = world.add_abstract();
  AtomId a2 = world.add_abstract();
  AtomId a3 = world.add_abstract();

  static StateValue at(double x) { return AbstractState{{x}}; }

  Process step(AtomId a, double from, double to, double w) const {
    return Process({{{a, at(from)}, {a, at(to)}, w}});
  }
  Process step2(AtomId a, double fa, double ta, double wa, AtomId b, double fb, double tb, double wb) const {
    return Process({{{a, at(fa)}, {a, at(ta)}, wa}, {{b, at(fb)}, {b, at(tb)}, wb}});
  }
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

double x(const StateValue& v) { return std::get<AbstractState>(v).coords.at(0); }

}  // namespace

TEST_CASE("concatenation follows the state rule on overlapping operands") {
  Fixture f;
  const auto p = f.step2(f.a1, 0, 1, 2.0, f.a2, 10, 11, 0.5);
  const auto q = f.step2(f.a2, 11, 12, -1.0, f.a3, 20, 21, 3.0);
  const auto r = concatenate(p, q);
  CHECK(r.involved() == System{f.a1, f.a2, f.a3});
  CHECK(x(r.initial(f.a1)) == 0);
  CHECK(x(r.final(f.a1)) == 1);
  CHECK(x(r.initial(f.a2)) == 10);
  CHECK(x(r.final(f.a2)) == 12);
  CHECK(x(r.initial(f.a3)) == 20);
  CHECK(x(r.final(f.a3)) == 21);
  CHECK(r.work(f.a1) == 2.0);
  CHECK(r.work(f.a2) == 0.5 + -1.0);
  CHECK(r.work(f.a3) == 3.0);
}

TEST_CASE("disjoint concatenation commutes") {
  Fixture f;
  const auto p = f.step(f.a1, 0, 1, 2.0);
  const auto q = f.step(f.a2, 5, 6, -1.0);
  const auto pq = concatenate(p, q);
  const auto qp = concatenate(q, p);
  for (auto a : {f.a1, f.a2}) {
    CHECK(pq.work(a) == qp.work(a));
    CHECK(same_state(pq.initial(a), qp.initial(a), 0.0));
    CHECK(same_state(pq.final(a), qp.final(a), 0.0));
  }
}

TEST_CASE("mismatched overlap states raise StateMismatch") {
  Fixture f;
  CHECK(kind_of([&] { concatenate(f.step(f.a1, 0, 1, 0), f.step(f.a1, 2, 3, 0)); }) == ErrorKind::StateMismatch);
}

TEST_CASE("work_of sums atoms and ignores uninvolved ones") {
  Fixture f;
  const auto p = f.step2(f.a1, 0, 1, 2.0, f.a2, 0, 1, -0.5);
  CHECK(work_of(System{f.a1, f.a2}, p) == 1.5);
  CHECK(work_of(System{f.a3}, p) == 0.0);
  CHECK(work_of(System{f.a1, f.a2}, p) == work_of(System{f.a1}, p) + work_of(System{f.a2}, p));
}

TEST_CASE("is_work_process requires exactly the involved atoms") {
  Fixture f;
  const auto p = f.step2(f.a1, 0, 1, 0, f.a2, 0, 1, 0);
  CHECK(is_work_process(System{f.a1, f.a2}, p));
  CHECK_FALSE(is_work_process(System{f.a1}, p));
  CHECK_FALSE(is_work_process(System{f.a1, f.a2, f.a3}, p));
}

TEST_CASE("identity process") {
  World world;
  const auto g = world.add_gas({});
  const auto id = make_identity(System{g}, JointState{{g, GasState{1, 1}}});
  CHECK(id.work(g) == 0.0);
  CHECK(std::get<GasState>(id.initial(g)) == GasState{1, 1});
  CHECK(std::get<GasState>(id.final(g)) == GasState{1, 1});
  CHECK(is_identity(id));
  CHECK(is_identity(concatenate(id, id)));
  CHECK(is_reversible(id));
  CHECK(is_identity(reverse_of(id)));
  CHECK(work_of(System{g}, id) == 0.0);
}

TEST_CASE("classify cyclic and catalytic") {
  Fixture f;
  CHECK(classify(System{f.a1}, f.step(f.a1, 0, 0, 1.0)).cyclic);
  CHECK_FALSE(classify(System{f.a1}, f.step(f.a1, 0, 0, 1.0)).catalytic);
  const auto internal = f.step2(f.a1, 0, 0, 1.0, f.a2, 3, 3, -1.0);
  const auto c = classify(System{f.a1, f.a2}, internal);
  CHECK(c.cyclic);
  CHECK(c.catalytic);
  CHECK_FALSE(classify(System{f.a1}, f.step(f.a1, 0, 1, 0)).cyclic);
}

TEST_CASE("Carnot machine is cyclic") {
  World world;
  const auto r1 = add_reservoir(world, 2.0);
  const auto r2 = add_reservoir(world, 1.0);
  const auto run = build_carnot(world, r1, r2, -1.0);
  CHECK(classify(System{run.machine.atom}, run.process).cyclic);
}

TEST_CASE("eliminate_catalyst keeps the footprint on s") {
  Fixture f;
  const auto p = f.step2(f.a1, 0, 1, 2.5, f.a2, 7, 7, 0.0);
  const auto q = eliminate_catalyst(System{f.a1}, System{f.a2}, p);
  CHECK(q.involved() == System{f.a1});
  CHECK(q.work(f.a1) == 2.5);
  CHECK(x(q.final(f.a1)) == 1);
  CHECK(kind_of([&] { eliminate_catalyst(System{f.a1}, System{f.a2}, f.step2(f.a1, 0, 1, 0, f.a2, 7, 8, 0)); }) ==
        ErrorKind::NotCatalytic);
  CHECK(kind_of([&] { eliminate_catalyst(System{f.a1}, System{f.a2}, f.step(f.a1, 0, 1, 0)); }) ==
        ErrorKind::NotWorkProcess);
  CHECK(kind_of([&] { eliminate_catalyst(System{f.a1}, System{f.a1}, p); }) == ErrorKind::Overlap);
}

TEST_CASE("reverse of a type-2 adiabat") {
  World world;
  const auto gas = add_gas(world);
  const auto p = ideal_gas::type2(gas, {1, 1}, 2).whole();
  const auto r = reverse_of(p);
  const auto end = std::get<GasState>(p.final(gas.atom));
  CHECK(end.p == doctest::Approx(std::pow(2.0, -5.0 / 3.0)).epsilon(1e-14));
  CHECK(std::get<GasState>(r.initial(gas.atom)) == end);
  CHECK(same_state(r.final(gas.atom), GasState{1, 1}, 1e-12));
  CHECK(r.work(gas.atom) == -p.work(gas.atom));
  CHECK(is_identity(concatenate(p, r), 1e-12, 1e-12));
}

TEST_CASE("type-1 processes are irreversible") {
  World world;
  const auto gas = add_gas(world);
  const auto p = ideal_gas::type1(gas, {1, 1}, 2).whole();
  CHECK_FALSE(is_reversible(p));
  CHECK(kind_of([&] { reverse_of(p); }) == ErrorKind::NoReverseWitness);
}

TEST_CASE("join of disjoint processes") {
  World world;
  const auto g1 = add_gas(world);
  const auto g2 = add_gas(world);
  const auto p1 = ideal_gas::type2(g1, {1, 1}, 0.5).whole();
  const auto p2 = ideal_gas::type2(g2, {2, 1}, 0.8).whole();
  const auto j = join(p1, p2);
  CHECK(j.involved() == System{g1.atom, g2.atom});
  CHECK(work_of(System{g1.atom, g2.atom}, j) == p1.work(g1.atom) + p2.work(g2.atom));
  const auto fresh = world.add_abstract();
  const auto k = join(p1, make_identity(System{fresh}, JointState{{fresh, AbstractState{{0.0}}}}));
  CHECK(k.work(g1.atom) == p1.work(g1.atom));
  CHECK(kind_of([&] { join(p1, p1); }) == ErrorKind::Overlap);
}

TEST_CASE("process construction rejects malformed entries") {
  Fixture f;
  CHECK(kind_of([&] { Process(std::vector<ProcessEntry>{}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { Process({{{f.a1, Fixture::at(0)}, {f.a2, Fixture::at(1)}, 0}}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("process JSON carries entries and reversibility") {
  World world;
  const auto gas = add_gas(world);
  const auto j = io::to_json(ideal_gas::type2(gas, {1, 1}, 2).whole());
  CHECK(j.contains("pid"));
  CHECK(j["entries"].size() == 1);
  CHECK(j["reversible"] == true);
}
