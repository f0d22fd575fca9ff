#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "imgb/construct.hpp"
#include "imgb/continuation.hpp"
#include "imgb/errors.hpp"
#include "imgb/paths.hpp"
#include "imgb/polynomial.hpp"

using namespace imgb;

namespace {

Polynomial R(std::vector<double> c) { return Polynomial::from_real(c); }

Path circle(Complex center, double radius, double start_angle, double sweep) {
  Path p(center + std::polar(radius, start_angle));
  p.arc_around(center, sweep);
  return p;
}

}  // namespace

TEST_CASE("evaluation and derivative") {
  CHECK(R({-1, 0, 1})(2.0) == doctest::Approx(3.0));
  const auto d = R({0, 0, 0, 0, 0, 0, 1.0 / 6.0}).derivative();
  CHECK(d.degree() == 5);
  CHECK(std::abs(d.coefficients()[5] - Complex{1.0}) < 1e-15);
  CHECK(R({0, 0, 3, -2})(1.0) == doctest::Approx(1.0));
  auto [v, dv] = R({1, 2, 3}).eval_with_derivative(Complex{2.0});
  CHECK(std::abs(v - Complex{17.0}) < 1e-14);
  CHECK(std::abs(dv - Complex{14.0}) < 1e-14);
}

TEST_CASE("coefficient files") {
  const auto p = Polynomial::parse_coefficients("# x^2 - 1\n-1\n0   # linear\n1 0\n");
  CHECK(p.degree() == 2);
  CHECK(Polynomial::parse_coefficients(p.to_coefficient_text()).coefficients() == p.coefficients());
  CHECK_THROWS_AS(Polynomial::parse_coefficients("1\nabc\n"), InputError);
  CHECK_THROWS_AS(Polynomial::parse_coefficients("# nothing\n"), InputError);
  CHECK_THROWS_AS(Polynomial::parse_coefficients("5\n"), InputError);
}

TEST_CASE("roots") {
  auto r = all_roots(R({-1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] + 1.0) < 1e-12);
  CHECK(std::abs(r[1] - 1.0) < 1e-12);

  const double s = build_f_scale();
  const auto crit = all_roots(build_f().derivative());
  const std::vector<double> expected{0.0, 1 - 1 / s, 1.0, 1 + 1 / s, 2.0};
  REQUIRE(crit.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(crit[k] - expected[k]) < 1e-9);

  const auto cl = root_clusters(Polynomial::monomial(3));
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].multiplicity == 3);
  CHECK(std::abs(cl[0].center) < 1e-6);
}

TEST_CASE("mild random polynomials recover their roots") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    std::vector<double> roots;
    while (roots.size() < n) {
      const double x = u(rng);
      bool ok = true;
      for (double y : roots) ok = ok && std::abs(x - y) >= 1e-2;
      if (ok) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    const auto p = Polynomial::from_roots(std::vector<Complex>(roots.begin(), roots.end()));
    auto found = all_roots(p);
    sort_points(found);
    REQUIRE(found.size() == n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(found[k] - roots[k]) < 1e-8);
  }
}

TEST_CASE("critical data") {
  const auto f = critical_data(build_f());
  REQUIRE(f.values.size() == 3);
  CHECK(f.finite);
  CHECK(std::abs(f.values[0]) < 1e-9);
  CHECK(std::abs(f.values[1] - 1.0) < 1e-9);
  CHECK(std::abs(f.values[2] - 2.0) < 1e-9);

  const auto h = solve_portrait(h_spec());
  const auto hd = critical_data(h.poly, 2);
  CHECK(hd.finite);
  REQUIRE(hd.postcritical.size() == 4);
  const double a = hd.postcritical[1].real();
  CHECK(a > 0.0);
  CHECK(a < h.slots.at("c1"));
  CHECK(std::abs(hd.postcritical[2] - 1.0) < 1e-9);

  const auto z5 = critical_data(Polynomial::monomial(5));
  REQUIRE(z5.values.size() == 1);
  CHECK(std::abs(z5.values[0]) < 1e-9);
}

TEST_CASE("preimage trees") {
  const auto t = preimage_tree(Polynomial::from_real({0, 0, 1}), Complex{1.0}, 2);
  REQUIRE(t.levels[2].size() == 4);
  for (Complex z : t.levels[2]) CHECK(std::abs(std::pow(z, 4) - 1.0) < 1e-12);

  const auto tf = preimage_tree(build_f(), Complex{1.5}, 1);
  REQUIRE(tf.levels[1].size() == 6);
  for (Complex z : tf.levels[1]) CHECK(std::abs(z.imag()) < 1e-9);

  const auto h = solve_portrait(h_spec()).poly;
  const double a = h(1.0);
  const auto th = preimage_tree(h, Complex{a + 0.02}, 2);
  REQUIRE(th.levels[2].size() == 36);
  std::size_t complex_points = 0;
  for (std::size_t k = 0; k < 36; ++k) {
    CHECK(std::abs(h(th.levels[2][k]) - th.levels[1][th.parents[2][k]]) < 1e-9 * 36);
    if (std::abs(th.levels[2][k].imag()) > 1e-6) ++complex_points;
  }
  CHECK(complex_points > 0);
  CHECK_THROWS_AS(preimage_tree(build_f(), Complex{1.0}, 1), NumericError);
}

TEST_CASE("continuation") {
  const IteratedMap sq(Polynomial::monomial(2), 1);
  const std::vector<Complex> start{Complex{1.0}, Complex{-1.0}};
  Path still(Complex{1.0});
  CHECK(continue_along(sq, still, start).endpoints == start);

  const auto r = continue_along(sq, circle(0.0, 1.0, 0.0, 2 * std::numbers::pi), start);
  CHECK(std::abs(r.endpoints[0] + 1.0) < 1e-10);
  CHECK(std::abs(r.endpoints[1] - 1.0) < 1e-10);

  // closed path permutes the fiber; a small loop around no critical value is trivial
  const auto idx = match_points(r.endpoints, start);
  CHECK(idx == std::vector<std::size_t>{1, 0});
  const auto small = continue_along(sq, circle(1.0, 0.3, std::numbers::pi, 2 * std::numbers::pi), start);
  CHECK(match_points(small.endpoints, start) == std::vector<std::size_t>{0, 1});

  ContinuationOptions half;
  half.max_step = 0.025;
  const auto r2 = continue_along(sq, circle(0.0, 1.0, 0.0, 2 * std::numbers::pi), start, half);
  CHECK(match_points(r2.endpoints, start) == idx);
}

TEST_CASE("continuation through a critical value fails with its parameter") {
  const IteratedMap sq(Polynomial::monomial(2), 1);
  Path through(Complex{1.0});
  through.line_to(Complex{-1.0});
  try {
    continue_along(sq, through, {Complex{1.0}, Complex{-1.0}});
    FAIL("expected a numeric failure");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("t=") != std::string::npos);
  }
}
