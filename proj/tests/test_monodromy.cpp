#include <doctest.h>

#include <cmath>

#include "imgb/construct.hpp"
#include "imgb/errors.hpp"
#include "imgb/hurwitz.hpp"
#include "imgb/monodromy.hpp"

using namespace imgb;

namespace {

Permutation P(const char* s, std::size_t m) { return Permutation::parse(s, m); }

std::vector<Permutation> perms(const std::vector<GeneratorAction>& g) {
  std::vector<Permutation> out;
  for (const auto& a : g) out.push_back(a.perm);
  return out;
}

constexpr const char* kH =
    "alpha = <id, alpha, id, id, id, delta> (1 2)(5 6)\n"
    "beta = <id, id, id, gamma, id, id> (3 4)\n"
    "gamma = <id, beta, id, id, id, id>\n"
    "delta = <id, id, id, id, id, id> (2 3)(4 5)\n";

std::vector<std::size_t> sorted_type(const Permutation& p) { return p.cycle_type(); }

}  // namespace

TEST_CASE("loops follow the axis with lower detours") {
  const std::vector<double> v{0.0, 1.0, 2.0};
  const auto loops = build_loops(v, 1.5, 0.1);
  REQUIRE(loops.size() == 3);
  // loop to 2: no detour, so it stays on the axis until the circle
  auto count_arcs = [](const Path& p) {
    std::size_t n = 0;
    for (const auto& piece : p.pieces()) n += std::holds_alternative<Arc>(piece);
    return n;
  };
  CHECK(count_arcs(loops[2].path) == 1);
  CHECK(count_arcs(loops[1].path) == 1);
  // loop to 0 detours below 1 on the way out and back
  CHECK(count_arcs(loops[0].path) == 3);
  for (const auto& l : loops) {
    CHECK(std::abs(l.path.start() - Complex{1.5}) < 1e-12);
    CHECK(std::abs(l.path.end() - Complex{1.5}) < 1e-12);
    for (Complex z : l.path.sample(0.01)) {
      CHECK(z.imag() <= 1e-12 + (std::abs(z - Complex{l.puncture}) <= 0.1 + 1e-9 ? 1.0 : 0.0));
      for (double u : v) CHECK(std::abs(z - Complex{u}) >= 0.1 - 1e-9);
    }
  }
  CHECK_THROWS(build_loops(v, 1.5, 0.6));
}

TEST_CASE("homotopy words of conventional loops") {
  const std::vector<double> v{0.0, 1.0, 2.0};
  const std::vector<Complex> pc(v.begin(), v.end());
  for (const auto& l : build_loops(v, 1.5, 0.1)) {
    const auto w = homotopy_word(l.path.sample(0.01), pc, 1e-4);
    REQUIRE(w.size() == 1);
    CHECK(w[0].puncture == l.puncture_index);
    CHECK(w[0].exponent == 1);
    auto there_and_back = l.path.sample(0.01);
    const auto back = l.path.reversed().sample(0.01);
    there_and_back.insert(there_and_back.end(), back.begin() + 1, back.end());
    CHECK(homotopy_word(there_and_back, pc, 1e-4).empty());
  }
  // clockwise loops read as inverses
  for (const auto& l : build_loops(v, 1.5, 0.1, Orientation::Clockwise))
    CHECK(homotopy_word(l.path.sample(0.01), pc, 1e-4).at(0).exponent == -1);
}

TEST_CASE("level-1 monodromy of the constructed polynomials") {
  MonodromyEngine f(build_f());
  CHECK(perms(f.generators(1)) ==
        std::vector<Permutation>{P("(1 2)(5 6)", 6), P("(3 4)", 6), P("(2 3)(4 5)", 6)});

  MonodromyEngine g(solve_portrait(g_spec()).poly);
  // punctures ascending: c, 0, 1
  CHECK(perms(g.generators(1)) == std::vector<Permutation>{P("(1 2)", 6), P("(3 4)(5 6)", 6), P("(2 3)(4 5)", 6)});

  MonodromyEngine h(solve_portrait(h_spec()).poly);
  CHECK(perms(h.generators(1)) ==
        std::vector<Permutation>{P("(1 2)(5 6)", 6), P("(3 4)", 6), Permutation::identity(6), P("(2 3)(4 5)", 6)});
}

TEST_CASE("cycle types follow the critical portrait") {
  MonodromyEngine f(build_f());
  const auto gens = f.generators(1);
  // values 0, 1, 2 carry local degrees {2,2}, {2}, {2,2}
  CHECK(sorted_type(gens[0].perm) == generator_cycle_type(6, {2, 2}));
  CHECK(sorted_type(gens[1].perm) == generator_cycle_type(6, {2}));
  CHECK(sorted_type(gens[2].perm) == generator_cycle_type(6, {2, 2}));
}

TEST_CASE("wreath recursion of h matches the displayed one") {
  MonodromyEngine h(solve_portrait(h_spec()).poly);
  const auto a = h.wreath_recursion();
  const auto m = match_up_to_renaming(a, Automaton::parse(kH));
  REQUIRE(m.has_value());
  CHECK(m->at("g1") == "alpha");
  CHECK(m->at("g2") == "beta");
  CHECK(m->at("g3") == "gamma");
  CHECK(m->at("g4") == "delta");
  // the section of alpha at letter 2 is the single word alpha
  const auto& words = h.section_words();
  REQUIRE(words[0][1].size() == 1);
  CHECK(words[0][1][0].puncture == 0);
  // every entry has length at most one
  for (const auto& state : words)
    for (const auto& w : state) CHECK(w.size() <= 1);
}

TEST_CASE("squaring gives the binary adding machine") {
  EngineOptions o;
  o.base = 1.0;
  MonodromyEngine sq(Polynomial::monomial(2), o);
  const auto a = sq.wreath_recursion();
  CHECK(a.unroll(a.at("g1"), 3).is_full_cycle());
  // same shape as the odometer: root (1 2), one self-section
  CHECK(a.root(a.at("g1")) == P("(1 2)", 2));
  std::size_t self = 0;
  for (const auto& w : a.sections(a.at("g1"))) self += w.size();
  CHECK(self == 1);
}

TEST_CASE("direct level-2 lifting equals unrolling") {
  for (const Polynomial& p : {build_f(), solve_portrait(g_spec()).poly, solve_portrait(h_spec()).poly}) {
    MonodromyEngine e(p, {}, 2);
    const auto a = e.wreath_recursion();
    const auto gens = e.generators(2);
    for (std::size_t k = 0; k < gens.size(); ++k)
      CHECK(a.unroll(a.at("g" + std::to_string(k + 1)), 2) == gens[k].perm);
    // level-1 truncation agrees too
    const auto l1 = e.generators(1);
    for (std::size_t k = 0; k < l1.size(); ++k) CHECK(a.root(a.at("g" + std::to_string(k + 1))) == l1[k].perm);
  }
}

TEST_CASE("infinity cycle") {
  MonodromyEngine f(build_f());
  CHECK(infinity_cycle_check(perms(f.generators(1))).found);
  MonodromyEngine z4(Polynomial::monomial(4));
  const auto z = perms(z4.generators(1));
  REQUIRE(z.size() == 1);
  CHECK(infinity_cycle_check(z).found);
  MonodromyEngine h(solve_portrait(h_spec()).poly, {}, 2);
  const auto r = infinity_cycle_check(perms(h.generators(2)));
  CHECK(r.found);
  CHECK(r.cycle_length == 36);
}

TEST_CASE("base point selection") {
  CHECK(choose_base_point(build_f(), {0.0, 1.0, 2.0}).base == doctest::Approx(1.5));
  MonodromyEngine h(solve_portrait(h_spec()).poly);
  CHECK(h.base_point() == doctest::Approx(1.5));
  CHECK(h.real_convention());
  MonodromyEngine z4(Polynomial::monomial(4));
  CHECK_FALSE(z4.real_convention());
  CHECK_FALSE(z4.warnings().empty());
  EngineOptions bad;
  bad.base = 1.0;
  CHECK_THROWS_AS(MonodromyEngine(build_f(), bad), InputError);
}

TEST_CASE("independence from base point and step size") {
  const Polynomial p = solve_portrait(h_spec()).poly;
  MonodromyEngine ref(p, {}, 2);
  const auto l2 = perms(ref.generators(2));
  for (double base : {1.2, 1.8}) {
    EngineOptions o;
    o.base = base;
    MonodromyEngine e(p, o, 2);
    CHECK(perms(e.generators(2)) == l2);
  }
  EngineOptions fine;
  fine.step_fraction = 0.125;
  MonodromyEngine e(p, fine, 2);
  CHECK(perms(e.generators(2)) == l2);
  // a base point in another interval changes labels but not cycle types
  EngineOptions other;
  other.base = 0.1;
  MonodromyEngine o(p, other, 2);
  const auto lo = perms(o.generators(2));
  REQUIRE(lo.size() == l2.size());
  for (std::size_t k = 0; k < lo.size(); ++k) CHECK(lo[k].cycle_type() == l2[k].cycle_type());
}

TEST_CASE("non-real post-critical points are refused") {
  // z^2 + i has the orbit i, -1 + i, -i, -1 + i
  CHECK_THROWS_AS(MonodromyEngine(Polynomial({Complex{0.0, 1.0}, 0.0, 1.0})), InputError);
}
