#include <doctest.h>

#include <random>

#include "imgb/errors.hpp"
#include "imgb/group.hpp"
#include "oracles.hpp"

using namespace imgb;

namespace {
Permutation P(const char* s, std::size_t m) { return Permutation::parse(s, m); }
}  // namespace

TEST_CASE("composition applies the right operand first") {
  CHECK(compose(Permutation::identity(3), P("(1 2 3)", 3)) == P("(1 2 3)", 3));
  CHECK(compose(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 2 3)", 3));
  CHECK_THROWS_AS(compose(P("(1 2)", 3), P("(1 2)", 4)), PreconditionError);
}

TEST_CASE("product of the three f generators is a 6-cycle") {
  const auto p = compose(compose(P("(1 2)(5 6)", 6), P("(3 4)", 6)), P("(2 3)(4 5)", 6));
  // oracle: multiply image tables directly
  std::vector<Point> img(6);
  const auto a = P("(1 2)(5 6)", 6), b = P("(3 4)", 6), c = P("(2 3)(4 5)", 6);
  for (Point x = 0; x < 6; ++x) img[x] = a(b(c(x)));
  CHECK(p == Permutation::from_images(img));
  CHECK(p.is_full_cycle());
}

TEST_CASE("cycles and order") {
  const auto p = P("(2 3)(4 5)", 6);
  CHECK(p.cycle_type() == std::vector<std::size_t>{2, 2, 1, 1});
  CHECK(p.order() == 2);
  CHECK(p.to_string() == "(2 3)(4 5)");
  CHECK(Permutation::identity(6).order() == 1);
  CHECK(Permutation::identity(6).cycles().empty());
}

TEST_CASE("ninth power of a 36-point full cycle has nine 4-cycles") {
  Cycle c(36);
  for (Point k = 0; k < 36; ++k) c[k] = k;
  const std::vector<Cycle> cs{c};
  const auto s = Permutation::from_cycles(36, cs).pow(9);
  CHECK(s.order() == 4);
  CHECK(s.cycle_type() == std::vector<std::size_t>(9, 4));
}

TEST_CASE("parse round trip and bad input") {
  CHECK(P("(1 5 2)(3 4)", 6).to_string() == "(1 5 2)(3 4)");
  CHECK_THROWS_AS(P("(1 7)", 6), InputError);
  CHECK_THROWS_AS(P("(1 2", 6), InputError);
  CHECK_THROWS_AS(P("(1 2)(2 3)", 6), InputError);
}

TEST_CASE("group orders") {
  CHECK(PermGroup(6, {P("(3 4)(5 6)", 6), P("(2 3)(4 5)", 6), P("(1 2)", 6)}).order() == 720);
  CHECK(PermGroup(6, {P("(1 2 3 4 5 6)", 6)}).order() == 6);
  const std::vector<Permutation> fgens{P("(2 3)(4 5)", 6), P("(3 4)", 6), P("(1 2)(5 6)", 6)};
  const BigInt order = PermGroup(6, fgens).order();
  CHECK(order == oracle::elements(fgens).size());
  CHECK(order < 720);
  // the group preserves {1,6},{2,5},{3,4}
  const auto all = oracle::elements(fgens);
  CHECK(oracle::is_block(all, {0, 5}));
  CHECK(oracle::is_block(all, {1, 4}));
  CHECK(oracle::is_block(all, {2, 3}));
}

TEST_CASE("closure and stabilizer chain agree; cap falls back") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + rng() % 6;
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) {
      std::vector<Point> img(m);
      for (Point x = 0; x < m; ++x) img[x] = x;
      std::shuffle(img.begin(), img.end(), rng);
      gens.push_back(Permutation::from_images(img));
    }
    PermGroup g(m, gens);
    CHECK(g.order_by_closure() == g.order_by_stabilizer_chain());
    CHECK(g.order(10) == g.order_by_stabilizer_chain());
    CHECK(g.order_by_closure() == oracle::elements(gens).size());
  }
  CHECK_THROWS_AS(PermGroup(6, {P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)}).order_by_closure(10), CapExceeded);
}

TEST_CASE("transitivity") {
  PermGroup s3(3, {P("(1 2)", 3), P("(2 3)", 3)});
  CHECK(s3.is_transitive());
  CHECK(s3.is_doubly_transitive());
  PermGroup c5(5, {P("(1 2 3 4 5)", 5)});
  CHECK(c5.is_transitive());
  CHECK_FALSE(c5.is_doubly_transitive());
  PermGroup f(6, {P("(2 3)(4 5)", 6), P("(3 4)", 6), P("(1 2)(5 6)", 6)});
  CHECK(f.is_transitive());
  CHECK_FALSE(f.is_doubly_transitive());
}

TEST_CASE("inverse and orbit invariants on random permutations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> img(9);
    for (Point x = 0; x < 9; ++x) img[x] = x;
    std::shuffle(img.begin(), img.end(), rng);
    const auto p = Permutation::from_images(img);
    CHECK(compose(p, p.inverse()).is_identity());
    PermGroup g(9, {p});
    for (const auto& orbit : g.orbits()) {
      std::set<Point> o(orbit.begin(), orbit.end());
      for (Point x : orbit) CHECK(o.count(p(x)) == 1);
    }
  }
}
