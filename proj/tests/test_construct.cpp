#include <doctest.h>

#include <cmath>

#include "imgb/construct.hpp"
#include "imgb/errors.hpp"
#include "imgb/group.hpp"
#include "imgb/monodromy.hpp"

using namespace imgb;

TEST_CASE("closed-form f") {
  const auto f = build_f();
  const double s = build_f_scale();
  CHECK(f.degree() == 6);
  CHECK(std::abs(f(1.0) - 1.0) < 1e-10);
  CHECK(std::abs(f(0.0)) < 1e-10);
  CHECK(std::abs(f(2.0)) < 1e-10);
  CHECK(std::abs(f(1 - 1 / s) - 2.0) < 1e-10);
  CHECK(std::abs(f(1 + 1 / s) - 2.0) < 1e-10);
  // the scale squared is a root of u^3 - 3u^2 - 3u + 1
  const double u = s * s;
  CHECK(std::abs(u * u * u - 3 * u * u - 3 * u + 1) < 1e-10);
  CHECK(u == doctest::Approx(2 + std::sqrt(3.0)));
}

TEST_CASE("expressions") {
  const auto e = Expr::parse("P(P(b))");
  CHECK(e.depth() == 2);
  CHECK(e.to_string() == "P(P(b))");
  CHECK(Expr::parse(" 0.5 ").number == 0.5);
  CHECK_THROWS_AS(Expr::parse("P(b"), InputError);
  CHECK_THROWS_AS(Expr::parse(""), InputError);
}

TEST_CASE("spec text") {
  const auto g = g_spec();
  CHECK(g.slots.size() == 5);
  CHECK(g.unknown_count() == 5);
  CHECK(g.equations.size() == 5);
  const auto again = PortraitSpec::parse(g.to_string());
  CHECK(again.to_string() == g.to_string());
  CHECK_THROWS_AS(PortraitSpec::parse("slots: 0 < c < 1\nP(0) = 0\n"), InputError);  // not square
  CHECK_THROWS_AS(PortraitSpec::parse("slots: 1 < 0\nP(0) = 0\nP(1) = 1\n"), InputError);
  CHECK_THROWS_AS(PortraitSpec::parse("slots: 0 < 1\nP(0) = 0\nP(x) = 1\n"), InputError);
}

TEST_CASE("g solution") {
  const auto s = solve_portrait(g_spec());
  CHECK(s.max_residual < 1e-10);
  const double c1 = s.slots.at("c1"), c2 = s.slots.at("c2"), c3 = s.slots.at("c3");
  CHECK(c1 < c2);
  CHECK(c2 < 0.0);
  CHECK(0.0 < c3);
  CHECK(c3 < 1.0);
  CHECK(std::abs(s.poly(c1) - c1) < 1e-10);
  CHECK(std::abs(s.poly(c2) - 1.0) < 1e-10);
  CHECK(std::abs(s.poly(c3) - 1.0) < 1e-10);
  CHECK(std::abs(s.poly(1.0)) < 1e-10);
  CHECK(std::abs(s.poly(0.0)) < 1e-10);
  for (double c : s.critical_points) CHECK(std::abs(s.poly.derivative()(Complex{c})) < 1e-8);
  MonodromyEngine e(s.poly);
  std::vector<Permutation> gens;
  for (const auto& a : e.generators(1)) gens.push_back(a.perm);
  CHECK(PermGroup(6, gens).order() == 720);
}

TEST_CASE("h solution") {
  const auto s = solve_portrait(h_spec());
  CHECK(s.max_residual < 1e-10);
  const double b = s.slots.at("b"), c1 = s.slots.at("c1");
  const double a = s.poly(b);
  CHECK(0.0 < a);
  CHECK(a < c1);
  CHECK(std::abs(s.poly(a) - b) < 1e-10);
  // the middle critical point lands on 1
  CHECK(std::abs(b - 1.0) < 1e-8);
}

TEST_CASE("solutions are stable under perturbed restarts") {
  const auto base = solve_portrait(h_spec());
  for (unsigned grid : {5u, 7u, 11u}) {
    SolveOptions o;
    o.grid_points = grid;
    const auto s = solve_portrait(h_spec(), o);
    for (const auto& [name, value] : base.slots) CHECK(std::abs(s.slots.at(name) - value) < 1e-8);
  }
}

TEST_CASE("conservative cubic and power maps") {
  const auto s = solve_portrait(conservative_cubic_spec());
  const std::vector<double> expected{0.0, 0.0, 3.0, -2.0};
  REQUIRE(s.poly.coefficients().size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(s.poly.coefficients()[k] - expected[k]) < 1e-10);
  CHECK(power_map(6).degree() == 6);
  CHECK_THROWS_AS(power_map(1), InputError);
}

TEST_CASE("power maps: cyclic monodromy with non-basic blocks at level 2") {
  MonodromyEngine z4(power_map(4));
  const auto g4 = z4.generators(1);
  REQUIRE(g4.size() == 1);
  CHECK(g4[0].perm.is_full_cycle());
  MonodromyEngine z6(power_map(6), {}, 2);
  const auto g6 = z6.generators(2);
  REQUIRE(g6.size() == 1);
  CHECK(g6[0].perm.is_full_cycle());
}
