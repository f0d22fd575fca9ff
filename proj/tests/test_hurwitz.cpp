#include <doctest.h>

#include "imgb/errors.hpp"
#include "imgb/hurwitz.hpp"
#include "oracles.hpp"

using namespace imgb;

TEST_CASE("generator cycle types") {
  CHECK(generator_cycle_type(6, {2, 2}) == std::vector<std::size_t>{2, 2, 1, 1});
  CHECK(generator_cycle_type(5, {3}) == std::vector<std::size_t>{3, 1, 1});
  CHECK(generator_cycle_type(7, {7}) == std::vector<std::size_t>{7});
}

TEST_CASE("portrait text and validity") {
  const auto p = CriticalPortrait::parse("d=6; v1:{2,2}; v2:{2,2}; v3:{2}");
  CHECK(p.degree == 6);
  CHECK(p.values.size() == 3);
  CHECK(p.riemann_hurwitz_valid());
  CHECK(CriticalPortrait::parse(p.to_string()).values == p.values);
  CHECK_FALSE((CriticalPortrait{5, {{2}}}).riemann_hurwitz_valid());
  CHECK_THROWS_AS(CriticalPortrait::parse("d=5; v1:{2}"), InputError);
  CHECK_THROWS_AS(CriticalPortrait::parse("degree six"), InputError);
}

TEST_CASE("tuples multiply to a full cycle and generate transitive groups") {
  for (unsigned d = 2; d <= 6; ++d)
    for (const auto& p : all_portraits(d))
      for (const auto& t : enumerate_tuples(p)) {
        CHECK(product_in_order(t, d).is_full_cycle());
        CHECK(PermGroup(d, t).is_transitive());
        for (std::size_t k = 0; k < t.size(); ++k) {
          auto expected = generator_cycle_type(d, p.values[k]);
          CHECK(t[k].cycle_type() == expected);
        }
      }
}

TEST_CASE("degree five cases") {
  auto an = portrait_determines_group(CriticalPortrait{5, {{2, 2}, {2, 2}}});
  CHECK(an.determined);
  for (const auto& c : an.classes) CHECK(c.order == 10);
  an = portrait_determines_group(CriticalPortrait{5, {{5}}});
  CHECK(an.determined);
  REQUIRE(an.classes.size() == 1);
  CHECK(an.classes[0].order == 5);
  CHECK(an.classes[0].tuple_count == 1);
}

TEST_CASE("every portrait up to degree five determines its group") {
  for (unsigned d = 2; d <= 5; ++d)
    for (const auto& p : all_portraits(d)) CHECK_MESSAGE(portrait_determines_group(p).determined, p.to_string());
  const auto s2 = portrait_determines_group(CriticalPortrait{2, {{2}}});
  CHECK(s2.determined);
  CHECK(s2.classes.at(0).order == 2);
}

TEST_CASE("degree six portrait shared by two different groups") {
  const auto an = portrait_determines_group(CriticalPortrait{6, {{2, 2}, {2, 2}, {2}}});
  CHECK_FALSE(an.determined);
  CHECK(an.classes.size() >= 2);
  bool big = false, three_blocks = false;
  for (const auto& c : an.classes) {
    big = big || c.order == 720;
    for (const auto& b : c.blocks) three_blocks = three_blocks || b.size() == 2;
    // the recorded order matches a brute-force closure
    CHECK(c.order == oracle::elements(c.representative).size());
  }
  CHECK(big);
  CHECK(three_blocks);
}

TEST_CASE("tuple count does not depend on the order of critical values") {
  const auto a = enumerate_tuples(CriticalPortrait{6, {{2, 2}, {2, 2}, {2}}});
  const auto b = enumerate_tuples(CriticalPortrait{6, {{2}, {2, 2}, {2, 2}}});
  CHECK(a.size() == b.size());
  CHECK_THROWS_AS(enumerate_tuples(CriticalPortrait{8, {{8}}}), CapExceeded);
}

TEST_CASE("conjugacy search") {
  const std::vector<Permutation> a{Permutation::parse("(1 2)(3 4)", 5), Permutation::parse("(2 3)(4 5)", 5)};
  const std::vector<Permutation> b{Permutation::parse("(2 1)(3 5)", 5), Permutation::parse("(1 3)(5 4)", 5)};
  const auto eb = oracle::elements(b);
  CHECK(conjugate_in_symmetric_group(a, std::vector<Permutation>(eb.begin(), eb.end())));
  const std::vector<Permutation> c{Permutation::parse("(1 2 3 4 5)", 5)};
  const auto ec = oracle::elements(c);
  CHECK_FALSE(conjugate_in_symmetric_group(a, std::vector<Permutation>(ec.begin(), ec.end())));
}
