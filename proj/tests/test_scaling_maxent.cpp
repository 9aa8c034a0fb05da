#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thermo/errors.hpp"
#include "thermo/io.hpp"
#include "thermo/scaling.hpp"

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

// S of λA at (U, V) for the default base gas: λ·S_A(U/λ, V/λ).
double scaled_S(double lambda, double U, double V) { return lambda * oracle::entropy_UV(U / lambda, V / lambda); }

// Grid search over the split fractions, refined twice around the best cell.
std::pair<double, double> grid_argmax(double lambda, double U, double V) {
  double bx = 0.5, by = 0.5, width = 0.5;
  for (int round = 0; round < 3; ++round) {
    double best = -INFINITY;
    double cx = bx, cy = by;
    for (int i = -50; i <= 50; ++i) {
      for (int j = -50; j <= 50; ++j) {
        const double x = cx + width * i / 50.0, y = cy + width * j / 50.0;
        if (x <= 0 || x >= 1 || y <= 0 || y >= 1) continue;
        const double s = scaled_S(lambda, x * U, y * V) + scaled_S(1 - lambda, (1 - x) * U, (1 - y) * V);
        if (s > best) {
          best = s;
          bx = x;
          by = y;
        }
      }
    }
    width /= 25.0;
  }
  return {bx, by};
}

}  // namespace

TEST_CASE("scaled models") {
  const GasModel base;
  const auto two = scale(base, Rational::of(2));
  CHECK(two.model.n == 2.0);
  CHECK(two.scale_state({1, 1}) == GasState{1, 2});
  const auto one = scale(base, Rational::of(1));
  CHECK(one.model == base);
  GasModel b = base;
  b.U0 = 0.4;
  const auto b2 = scale(b, Rational::of(2));
  CHECK(ideal_gas::oracle::energy(b2.model, b2.scale_state({1.3, 0.7})) ==
        doctest::Approx(2 * ideal_gas::oracle::energy(b, {1.3, 0.7})));
  CHECK(kind_of([] { Rational::of(-1, 2); }) == ErrorKind::NonPositiveScale);
  CHECK(kind_of([] { Rational::of(0); }) == ErrorKind::NonPositiveScale);
  CHECK(Rational::of(4, 6) == Rational{2, 3});
}

TEST_CASE("extensive and intensive variables") {
  const GasModel base;
  auto V = [](const GasModel&, const GasState& s) { return s.V; };
  auto p = [](const GasModel&, const GasState& s) { return s.p; };
  auto S = [](const GasModel& g, const GasState& s) { return ideal_gas::oracle::entropy(g, s); };
  auto U = [](const GasModel& g, const GasState& s) { return ideal_gas::oracle::energy(g, s); };
  auto T = [](const GasModel& g, const GasState& s) { return ideal_gas::oracle::temperature(g, s); };
  auto V2 = [](const GasModel&, const GasState& s) { return s.V * s.V; };
  CHECK(classify_variable(V, base) == Scaling::Extensive);
  CHECK(classify_variable(p, base) == Scaling::Intensive);
  CHECK(classify_variable(S, base) == Scaling::Extensive);
  CHECK(classify_variable(U, base) == Scaling::Extensive);
  CHECK(classify_variable(T, base) == Scaling::Intensive);
  CHECK(classify_variable(V2, base) == Scaling::Neither);
  CHECK(to_string(Scaling::Neither) == "neither");
}

TEST_CASE("constraint removal") {
  World world;
  const GasModel base;
  const auto half = scale(base, Rational::of(1, 2));
  const auto a1 = world.add_gas(half.model);
  const auto a2 = world.add_gas(half.model);
  const auto r = remove_constraint(half, a1, {1.2, 0.8}, half, a2, {0.8, 1.2});
  CHECK(r.part1.U == doctest::Approx(1.0));
  CHECK(r.part1.V == doctest::Approx(1.0));
  CHECK(r.part2.U == doctest::Approx(1.0));
  CHECK(r.total.U == doctest::Approx(2.0));
  CHECK(r.total.V == doctest::Approx(2.0));
  CHECK(r.process.work(a1) == 0.0);
  CHECK(r.process.work(a2) == 0.0);
  const double before = entropy_uv(half.model, {1.2, 0.8}) + entropy_uv(half.model, {0.8, 1.2});
  const double after = entropy_uv(half.model, r.part1) + entropy_uv(half.model, r.part2);
  CHECK(after > before);

  const auto same = remove_constraint(half, a1, {1, 1}, half, a2, {1, 1});
  CHECK(is_identity(same.process));

  GasModel other;
  other.gamma = 1.4;
  const auto foreign = scale(other, Rational::of(1, 2));
  CHECK(kind_of([&] { remove_constraint(half, a1, {1, 1}, foreign, a2, {1, 1}); }) == ErrorKind::IncompatibleBases);
}

TEST_CASE("maximum entropy split") {
  const GasModel base;
  const auto sym = max_entropy_split(base, 0.5, {2, 2});
  CHECK(sym.part1.U == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sym.part1.V == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sym.part2.U == doctest::Approx(1.0).epsilon(1e-9));

  const auto [gx, gy] = grid_argmax(0.25, 4, 8);
  CHECK(gx == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(gy == doctest::Approx(0.25).epsilon(1e-3));
  const auto q = max_entropy_split(base, 0.25, {4, 8});
  CHECK(std::fabs(q.part1.U - 1.0) < 1e-6);
  CHECK(std::fabs(q.part1.V - 2.0) < 1e-6);
  CHECK(std::fabs(q.part2.U - 3.0) < 1e-6);
  CHECK(std::fabs(q.part2.V - 6.0) < 1e-6);
  CHECK(std::fabs(q.s_max - oracle::entropy_UV(4, 8)) < 1e-8);

  const auto e = max_entropy_split(base, 0.3, {2, 5}, MaxEntropyMode::EnergyOnly);
  CHECK(std::fabs(e.part1.U - 0.6) < 1e-6);
  CHECK(e.part1.V == doctest::Approx(1.5));

  CHECK(kind_of([&] { max_entropy_split(base, 1.2, {2, 2}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { max_entropy_split(base, 0.5, {-1, 2}); }) == ErrorKind::OutOfDomain);

  const auto j = io::to_json(q);
  CHECK(j.contains("s_max"));
}

TEST_CASE("concavity") {
  const GasModel base;
  const UVBox box{0.1, 10, 0.1, 10};
  const auto s = [&](double U, double V) { return entropy_uv(base, {U, V}); };
  const auto r = check_concavity(s, box, 1000, 42);
  CHECK(r.samples == 3000);
  CHECK(r.violations == 0);
  CHECK(r.min_slack >= -1e-10);

  const UVBox point{1, 1 + 1e-300, 2, 2 + 1e-300};
  CHECK(std::fabs(check_concavity(s, point, 10, 1).min_slack) < 1e-12);

  const auto fake = [](double U, double V) { return U * U + V * V; };
  CHECK(check_concavity(fake, box, 100, 42).violations > 0);
}
