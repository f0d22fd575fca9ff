#include <doctest.h>

#include <random>

#include "imgb/automaton.hpp"
#include "imgb/blocks.hpp"
#include "imgb/errors.hpp"
#include "oracles.hpp"

using namespace imgb;

namespace {

Permutation P(const char* s, std::size_t m) { return Permutation::parse(s, m); }

std::vector<Permutation> h_level2() {
  const Automaton a = Automaton::parse(
      "alpha = <id, alpha, id, id, id, delta> (1 2)(5 6)\n"
      "beta = <id, id, id, gamma, id, id> (3 4)\n"
      "gamma = <id, beta, id, id, id, id>\n"
      "delta = <id, id, id, id, id, id> (2 3)(4 5)\n");
  std::vector<Permutation> out;
  for (const char* n : {"alpha", "beta", "gamma", "delta"}) out.push_back(a.unroll(a.at(n), 2));
  return out;
}

Point at(const TreeShape& s, const char* w) { return static_cast<Point>(s.index_of(s.parse_word(w))); }

Permutation random_perm(std::size_t m, std::mt19937_64& rng) {
  std::vector<Point> img(m);
  for (Point x = 0; x < m; ++x) img[x] = x;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

}  // namespace

TEST_CASE("minimal blocks") {
  const PermGroup c6(6, {P("(1 2 3 4 5 6)", 6)});
  const Point s14[2] = {0, 3};
  CHECK(minimal_block(c6, s14) == PointSet{0, 3});
  CHECK(oracle::is_block(oracle::elements(c6.generators()), {0, 3}));

  const PermGroup s6(6, {P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)});
  const Point s12[2] = {0, 1};
  CHECK(minimal_block(s6, s12).size() == 6);

  const TreeShape t(6, 2);
  const PermGroup h2(36, h_level2());
  const Point seed[2] = {at(t, "32"), at(t, "42")};
  PointSet expected{at(t, "32"), at(t, "35"), at(t, "42"), at(t, "45")};
  std::sort(expected.begin(), expected.end());
  CHECK(minimal_block(h2, seed) == expected);

  const PermGroup intransitive(4, {P("(1 2)", 4)});
  const Point any[1] = {0};
  CHECK_THROWS_AS(minimal_block(intransitive, any), PreconditionError);
}

TEST_CASE("minimal block is idempotent, monotone and a raw block") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 8;
    std::vector<Permutation> gens{P("(1 2 3 4 5 6 7 8)", 8), random_perm(m, rng).pow(2)};
    if (trial % 2) gens.pop_back();
    const PermGroup g(m, gens);
    const auto all = oracle::elements(gens);
    const Point a = static_cast<Point>(rng() % m), b = static_cast<Point>(rng() % m), c = static_cast<Point>(rng() % m);
    const Point small[2] = {a, b};
    const Point large[3] = {a, b, c};
    const PointSet bs = minimal_block(g, small), bl = minimal_block(g, large);
    CHECK(oracle::is_block(all, bs));
    CHECK(minimal_block(g, bs) == bs);
    CHECK(std::includes(bl.begin(), bl.end(), bs.begin(), bs.end()));
  }
}

TEST_CASE("block lattices") {
  const PermGroup c4(4, {P("(1 2 3 4)", 4)});
  CHECK(block_lattice_at(c4, 0) == std::vector<PointSet>{{0}, {0, 2}, {0, 1, 2, 3}});
  const PermGroup s6(6, {P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)});
  CHECK(block_lattice_at(s6, 0).size() == 2);
  const PermGroup f(6, {P("(2 3)(4 5)", 6), P("(3 4)", 6), P("(1 2)(5 6)", 6)});
  const auto lf = block_lattice_at(f, 0);
  CHECK(std::find(lf.begin(), lf.end(), PointSet{0, 5}) != lf.end());
  CHECK_THROWS_AS(block_lattice_at(PermGroup(200, {Permutation::identity(200)}), 0), CapExceeded);
}

TEST_CASE("block lattice equals brute force on small trees") {
  std::mt19937_64 rng(23);
  for (const TreeShape shape : {TreeShape(2, 2), TreeShape(2, 3), TreeShape(4, 2), TreeShape(2, 4), TreeShape(3, 2)}) {
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Permutation> gens{adding_machine(shape.degree).unroll(std::size_t{1}, shape.height)};
      for (int k = 0; k < trial % 3; ++k) gens.push_back(TreePortrait::random(shape, rng, 0.5).unroll());
      const PermGroup g(shape.leaves(), gens);
      const auto lattice = block_lattice_at(g, 0);
      const auto brute = oracle::blocks_at(oracle::elements(gens), shape.leaves(), 0);
      CHECK(std::set<PointSet>(lattice.begin(), lattice.end()) == brute);
      // sorted by size then lexicographically
      CHECK(std::is_sorted(lattice.begin(), lattice.end(), [](const PointSet& a, const PointSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      }));
    }
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(PermGroup(6, {P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)})));
  CHECK_FALSE(is_primitive(PermGroup(6, {P("(2 3)(4 5)", 6), P("(3 4)", 6), P("(1 2)(5 6)", 6)})));
  CHECK(is_primitive(PermGroup(5, {P("(1 2)(3 4)", 5), P("(2 3)(4 5)", 5)})));
}

TEST_CASE("doubly transitive implies primitive on random groups") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 3 + rng() % 7;
    Cycle c(m);
    for (Point x = 0; x < m; ++x) c[x] = x;
    const std::vector<Cycle> cs{c};
    std::vector<Permutation> gens{Permutation::from_cycles(m, cs), random_perm(m, rng)};
    if (trial % 3 == 0) gens[1] = gens[0].pow(2);
    const PermGroup g(m, gens);
    if (g.is_doubly_transitive()) CHECK(is_primitive(g));
  }
}

TEST_CASE("full-cycle verifier") {
  std::mt19937_64 rng(31);
  const TreeShape s(2, 3);
  std::vector<Permutation> gens{adding_machine(2).unroll(std::size_t{1}, 3)};
  for (int k = 0; k < 5; ++k) gens.push_back(TreePortrait::random(s, rng).unroll());
  auto r = verify_main1(s, PermGroup(8, gens));
  CHECK(r.passed);
  CHECK(r.all_branches);

  const TreeShape s41(4, 1);
  r = verify_main1(s41, PermGroup(4, {P("(1 2 3 4)", 4)}));
  CHECK(r.passed);
  CHECK_FALSE(r.all_branches);

  const TreeShape s62(6, 2);
  r = verify_main1(s62, PermGroup(36, {adding_machine(6).unroll(std::size_t{1}, 2)}));
  CHECK_FALSE(r.passed);
  REQUIRE(r.counterexample.has_value());
  CHECK_FALSE(r.counterexample->shape.basic());

  CHECK_THROWS_AS(verify_main1(s41, PermGroup(4, {P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)})), HypothesisError);
}

TEST_CASE("primitive-top verifier") {
  std::mt19937_64 rng(37);
  const TreeShape s(2, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Permutation> gens{adding_machine(2).unroll(std::size_t{1}, 3), TreePortrait::random(s, rng).unroll()};
    CHECK(verify_main3(s, PermGroup(8, gens)).passed);
  }
  const TreeShape s62(6, 2);
  CHECK_THROWS_AS(verify_main3(s62, PermGroup(36, h_level2())), HypothesisError);
}

TEST_CASE("power map orbits are non-basic blocks") {
  struct Case {
    unsigned p, q, n;
    std::size_t size, leaves;
  };
  for (const Case c : {Case{2, 3, 2, 4, 36}, Case{2, 3, 3, 8, 216}, Case{2, 5, 2, 4, 100}}) {
    const auto r = power_map_blocks(c.p, c.q, c.n);
    CHECK(r.shape.leaves() == c.leaves);
    CHECK(r.block.points.size() == c.size);
    CHECK(r.is_block);
    CHECK(r.block.shape.kind == BlockClass::NotBasic);
  }
  CHECK_THROWS_AS(power_map_blocks(3, 2, 2), PreconditionError);
}

TEST_CASE("fatou oracle") {
  const TreeShape t(6, 2);
  const Point seed[2] = {at(t, "32"), at(t, "42")};
  const auto r = fatou_oracle(t, PermGroup(36, h_level2()), seed);
  CHECK(r.block_size == 4);
  CHECK_FALSE(r.exceeds);

  const TreeShape t22(2, 2);
  // full automorphism group of the binary tree of height 2, order 8
  const std::vector<Permutation> aut{P("(1 2)", 4), P("(3 4)", 4), P("(1 3)(2 4)", 4)};
  CHECK(oracle::elements(aut).size() == 8);
  const Point cross[2] = {at(t22, "11"), at(t22, "21")};
  const auto full = fatou_oracle(t22, PermGroup(4, aut), cross);
  CHECK(full.block_size == 4);
  CHECK(full.exceeds);

  const Point same[2] = {at(t22, "11"), at(t22, "12")};
  CHECK_THROWS_AS(fatou_oracle(t22, PermGroup(4, aut), same), PreconditionError);

  // prime-power degree with a full cycle: at least twice a major branch
  std::mt19937_64 rng(41);
  const TreeShape t32(3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Permutation> gens{adding_machine(3).unroll(std::size_t{1}, 2), TreePortrait::random(t32, rng).unroll()};
    const Point s2[2] = {0, 3 * (1 + static_cast<Point>(rng() % 2))};
    const auto fr = fatou_oracle(t32, PermGroup(9, gens), s2);
    CHECK(fr.block_size >= 6);
    CHECK(fr.exceeds);
  }
}

TEST_CASE("full cycle search") {
  const PermGroup g(4, {P("(1 2)", 4), P("(2 3 4)", 4)});
  const auto w = find_full_cycle(g);
  REQUIRE(w.has_value());
  CHECK(w->element.is_full_cycle());
  CHECK_FALSE(find_full_cycle(PermGroup(4, {P("(1 2)", 4)})).has_value());
}
