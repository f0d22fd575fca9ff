#include "imgb/suite.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "imgb/blocks.hpp"
#include "imgb/conservative.hpp"
#include "imgb/construct.hpp"
#include "imgb/errors.hpp"
#include "imgb/hurwitz.hpp"
#include "imgb/reports.hpp"

namespace imgb {

EngineOptions RunConfig::engine() const {
  EngineOptions o;
  o.roots = roots;
  o.clearance = clearance;
  o.orientation = orientation;
  return o;
}

void RunConfig::validate() const {
  if (!(roots.tolerance > 0.0) || !(roots.cluster_tolerance > 0.0) || !(clearance > 0.0))
    throw InputError("tolerances must be positive");
  if (level_cap < 1) throw InputError("level cap must be at least 1");
  if (closure_cap < 1) throw InputError("closure cap must be at least 1");
}

namespace {

// Thrown inside a criterion to stop it with a failure message.
struct Failed {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

std::vector<Permutation> perms_of(const std::vector<GeneratorAction>& g) {
  std::vector<Permutation> out;
  for (const auto& a : g) out.push_back(a.perm);
  return out;
}

std::string perms_text(const std::vector<Permutation>& ps) {
  std::string s;
  for (std::size_t k = 0; k < ps.size(); ++k) s += (k ? ", " : "") + ps[k].to_string();
  return s;
}

PermGroup group_of(const std::vector<Permutation>& ps) { return PermGroup(ps.front().degree(), ps); }

// Expected recursion for h, states named by loop around 0, a, 1, 2.
constexpr const char* kExpectedH =
    "alpha = <id, alpha, id, id, id, delta> (1 2)(5 6)\n"
    "beta = <id, id, id, gamma, id, id> (3 4)\n"
    "gamma = <id, beta, id, id, id, id>\n"
    "delta = <id, id, id, id, id, id> (2 3)(4 5)\n";

Point x_index(unsigned i, unsigned j) { return static_cast<Point>((i - 1) * 6 + (j - 1)); }

std::vector<PointSet> h_partition() {
  std::vector<PointSet> parts;
  for (unsigned i = 2; i <= 3; ++i)
    for (unsigned j = 1; j <= 3; ++j)
      parts.push_back({x_index(i, j), x_index(i, 7 - j), x_index(7 - i, 4 - j), x_index(7 - i, 3 + j)});
  parts.push_back({x_index(1, 1), x_index(1, 6), x_index(6, 2), x_index(6, 5)});
  parts.push_back({x_index(1, 2), x_index(1, 5), x_index(6, 3), x_index(6, 4)});
  parts.push_back({x_index(1, 3), x_index(1, 4), x_index(6, 1), x_index(6, 6)});
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

Permutation random_full_cycle(const TreeShape& shape, std::mt19937_64& rng) {
  const Permutation odometer = adding_machine(shape.degree).unroll(std::size_t{1}, shape.height);
  const Permutation t = TreePortrait::random(shape, rng).unroll();
  return t * odometer * t.inverse();
}

const std::vector<TreeShape>& property_shapes() {
  static const std::vector<TreeShape> shapes{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2},
                                             {4, 3}, {5, 2}, {8, 2}, {9, 2}};
  return shapes;
}

// ---------------------------------------------------------------------------

std::string c1_f(const RunConfig& cfg) {
  const ConstructReport f = construct_named("f");
  const double residual = f.details["max_residual"].get<double>();
  expect(residual < 1e-9, "closed-form residual too large");
  MonodromyEngine engine(f.poly, cfg.engine(), 1);
  const auto gens = perms_of(engine.generators(1));
  const std::vector<Permutation> expected{Permutation::parse("(1 2)(5 6)", 6), Permutation::parse("(3 4)", 6),
                                          Permutation::parse("(2 3)(4 5)", 6)};
  expect(gens == expected, "generators " + perms_text(gens));
  const PermGroup g = group_of(gens);
  for (const PointSet& b : std::vector<PointSet>{{0, 5}, {1, 4}, {2, 3}})
    expect(is_block(g, b), "missing block");
  const auto lattice = block_lattice_at(g, 0);
  expect(std::find(lattice.begin(), lattice.end(), PointSet{0, 5}) != lattice.end(), "{1,6} not in lattice");
  const BigInt order = g.order(cfg.closure_cap);
  expect(order < 720, "order not below 720");
  std::ostringstream os;
  os << "generators " << perms_text(gens) << "; blocks {1,6},{2,5},{3,4}; order " << order << "; residual "
     << std::setprecision(2) << residual;
  return os.str();
}

std::string c2_g(const RunConfig& cfg) {
  const ConstructReport gr = construct_named("g");
  MonodromyEngine engine(gr.poly, cfg.engine(), 1);
  const auto gens = perms_of(engine.generators(1));
  const BigInt order = group_of(gens).order(cfg.closure_cap);
  expect(order == 720, "order " + order.str());
  std::ostringstream os;
  os << "generators " << perms_text(gens) << "; order " << order << "; residual " << std::setprecision(2)
     << gr.details["max_residual"].get<double>();
  return os.str();
}

std::string c3_h(const RunConfig& cfg) {
  const ConstructReport hr = construct_named("h");
  expect(hr.details["a_between_0_and_c1"].get<bool>(), "a not between 0 and c1");
  MonodromyEngine engine(hr.poly, cfg.engine(), 2);
  expect(engine.punctures().size() == 4, "expected four post-critical points");
  const Automaton got = engine.wreath_recursion();
  const auto renaming = match_up_to_renaming(got, Automaton::parse(kExpectedH));
  expect(renaming.has_value(), "wreath recursion differs:\n" + got.to_text());

  const auto gens2 = perms_of(engine.generators(2));
  const PermGroup g2 = group_of(gens2);
  std::set<Point> covered;
  for (const PointSet& part : h_partition()) {
    expect(is_block(g2, part), "partition part is not a block");
    covered.insert(part.begin(), part.end());
  }
  expect(covered.size() == 36, "partition does not cover level 2");
  const TreeShape shape(6, 2);
  const Point seed[2] = {x_index(3, 2), x_index(4, 2)};
  const FatouResult fr = fatou_oracle(shape, g2, seed);
  const PointSet expected_block{x_index(3, 2), x_index(3, 5), x_index(4, 2), x_index(4, 5)};
  expect(fr.block == expected_block, "minimal block of {32,42} has " + std::to_string(fr.block_size) + " points");
  expect(!fr.exceeds && fr.block_size < 7, "fatou oracle answered positively");
  std::ostringstream os;
  os << std::setprecision(9) << "b=" << hr.details["b"].get<double>() << " a=" << hr.details["a"].get<double>()
     << "; recursion matches; nine 4-blocks; minimal block {32,42} size " << fr.block_size << " < 7";
  return os.str();
}

std::string c4_cross(const RunConfig& cfg) {
  std::ostringstream os;
  for (const char* name : {"f", "g", "h"}) {
    MonodromyEngine engine(construct_named(name).poly, cfg.engine(), 2);
    const Automaton a = engine.wreath_recursion();
    const auto direct = engine.generators(2);
    for (std::size_t k = 0; k < direct.size(); ++k) {
      const Permutation unrolled = a.unroll(a.at("g" + std::to_string(k + 1)), 2);
      expect(unrolled == direct[k].perm, std::string(name) + " generator " + std::to_string(k + 1) + " differs");
    }
    os << name << ": " << direct.size() << " generators agree on 36 points; ";
  }
  std::string s = os.str();
  return s.substr(0, s.size() - 2);
}

std::string c5_hurwitz(const RunConfig&) {
  std::size_t portraits = 0;
  std::map<std::uint64_t, std::size_t> by_order;
  for (unsigned d = 2; d <= 5; ++d) {
    for (const CriticalPortrait& p : all_portraits(d)) {
      ++portraits;
      const PortraitAnalysis an = portrait_determines_group(p);
      expect(an.determined, "portrait " + p.to_string() + " is not determined");
      expect(!an.classes.empty(), "portrait " + p.to_string() + " has no tuples");
      if (d < 5) continue;
      const auto n = p.normalized();
      std::uint64_t expected = 120;
      using V = std::vector<std::vector<unsigned>>;
      if (n.values == V{{5}})
        expected = 5;
      else if (n.values == V{{2, 2}, {2, 2}})
        expected = 10;
      else if (n.values == V{{2, 2}, {3}} || n.values == V{{3}, {2, 2}} || n.values == V{{3}, {3}})
        expected = 60;
      for (const GroupClass& c : an.classes)
        expect(c.order == expected, "portrait " + p.to_string() + " gives order " + std::to_string(c.order));
      ++by_order[expected];
    }
  }
  std::ostringstream os;
  os << portraits << " portraits determined; degree-5 portraits by group order:";
  for (auto [order, count] : by_order) os << ' ' << order << " x" << count;
  return os.str();
}

std::string c6_degree6(const RunConfig&) {
  const CriticalPortrait p{6, {{2, 2}, {2, 2}, {2}}};
  const PortraitAnalysis an = portrait_determines_group(p);
  bool symmetric = false, imprimitive3 = false;
  std::ostringstream os;
  os << an.classes.size() << " classes:";
  for (const GroupClass& c : an.classes) {
    if (c.order == 720) symmetric = true;
    for (const PointSet& b : c.blocks)
      if (b.size() == 2 && !c.primitive) imprimitive3 = true;
    os << " order " << c.order << (c.primitive ? " primitive" : " imprimitive") << ';';
  }
  expect(an.classes.size() >= 2, "fewer than two group classes");
  expect(symmetric, "no class of order 720");
  expect(imprimitive3, "no imprimitive class with three blocks");
  return os.str();
}

std::string c7_main1(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 7);
  std::size_t groups = 0, blocks = 0, prime_cases = 0;
  for (int round = 0; round < 25; ++round) {
    for (const TreeShape& shape : property_shapes()) {
      std::vector<Permutation> gens{random_full_cycle(shape, rng)};
      const int extra = static_cast<int>(rng() % 3);
      for (int k = 0; k < extra; ++k) gens.push_back(TreePortrait::random(shape, rng, 0.5).unroll());
      const PermGroup g(shape.leaves(), gens);
      const Main1Result r = verify_main1(shape, g);
      if (!r.passed) {
        std::ostringstream os;
        os << "shape (" << shape.degree << "," << shape.height << ") ";
        if (r.counterexample) os << "block of size " << r.counterexample->points.size() << " is "
                                 << to_string(r.counterexample->shape.kind);
        throw Failed{os.str()};
      }
      ++groups;
      blocks += r.blocks_checked;
      if (r.prime) ++prime_cases;
    }
  }
  expect(groups >= 200, "fewer than 200 groups");
  return std::to_string(groups) + " groups, " + std::to_string(blocks) + " blocks, all basic; " +
         std::to_string(prime_cases) + " prime-degree groups with branch blocks only";
}

std::string c8_main3(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 8);
  std::size_t groups = 0, pairs = 0, rejected = 0;
  for (int round = 0; round < 25; ++round) {
    for (const TreeShape& shape : property_shapes()) {
      for (int attempt = 0;; ++attempt) {
        expect(attempt < 10000, "could not sample a primitive level-1 restriction");
        std::vector<Permutation> gens{random_full_cycle(shape, rng)};
        const int extra = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < extra; ++k) gens.push_back(TreePortrait::random(shape, rng).unroll());
        std::vector<Permutation> top;
        for (const auto& p : gens) top.push_back(truncate_to_level(p, shape, 1));
        if (!is_primitive(PermGroup(shape.degree, top))) {
          ++rejected;
          continue;
        }
        const Main3Result r = verify_main3(shape, PermGroup(shape.leaves(), gens));
        if (!r.passed) {
          std::ostringstream os;
          os << "shape (" << shape.degree << "," << shape.height << ") pair (" << r.counterexample->first + 1 << ","
             << r.counterexample->second + 1 << ") block size " << r.counterexample_block_size;
          throw Failed{os.str()};
        }
        ++groups;
        pairs += r.pairs_checked;
        break;
      }
    }
  }
  expect(groups >= 200, "fewer than 200 groups");
  return std::to_string(groups) + " groups (" + std::to_string(rejected) + " rejected samples), " +
         std::to_string(pairs) + " cross-branch pairs all give the full level";
}

std::string c9_powers(const RunConfig&) {
  std::ostringstream os;
  for (auto [p, q, n] : std::vector<std::array<unsigned, 3>>{{2, 3, 2}, {2, 3, 3}, {2, 5, 2}}) {
    const PowerMapResult r = power_map_blocks(p, q, n);
    std::size_t pn = 1;
    for (unsigned k = 0; k < n; ++k) pn *= p;
    expect(r.is_block, "orbit is not a block");
    expect(r.block.points.size() == pn, "block size " + std::to_string(r.block.points.size()));
    expect(!r.block.shape.basic(), "block is basic");
    os << "(" << p << "," << q << "," << n << "): non-basic block of size " << pn << "; ";
  }
  std::string s = os.str();
  return s.substr(0, s.size() - 2);
}

std::string c10_conservative(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 10);
  std::size_t systems = 0, words = 0, longest = 0;
  for (; systems < 500; ++systems) {
    const unsigned d = 3 + static_cast<unsigned>(rng() % 7);
    const CycleSystem s = random_cycle_system(d, 2, rng);
    expect(check_doubly_transitive(s), "system not doubly transitive:\n" + s.to_string());
    const std::size_t bound = witness_length_bound(s);
    for (Point a = 0; a < d; ++a)
      for (Point b = 0; b < d; ++b)
        for (Point c = 0; c < d; ++c) {
          if (a == b || b == c || a == c) continue;
          const WitnessWord w = witness(s, a, b, c);
          const Permutation e = evaluate(s, w);
          expect(e(a) == c && e(b) == b, "witness fails for (" + std::to_string(a + 1) + "," +
                                              std::to_string(b + 1) + "," + std::to_string(c + 1) + ") in\n" +
                                              s.to_string());
          expect(w.size() <= bound, "witness longer than its bound");
          longest = std::max(longest, w.size());
          ++words;
        }
  }
  const PortraitSolution cubic = solve_portrait(conservative_cubic_spec());
  const auto& co = cubic.poly.coefficients();
  const std::vector<double> expected{0.0, 0.0, 3.0, -2.0};
  expect(co.size() == 4, "cubic has the wrong degree");
  for (std::size_t k = 0; k < 4; ++k) expect(std::abs(co[k] - expected[k]) < 1e-9, "cubic coefficients differ");
  MonodromyEngine engine(cubic.poly, cfg.engine(), 1);
  const BigInt order = group_of(perms_of(engine.generators(1))).order(cfg.closure_cap);
  expect(order == 6, "cubic monodromy order " + order.str());
  return std::to_string(systems) + " systems doubly transitive; " + std::to_string(words) +
         " witness words verified (longest " + std::to_string(longest) + "); -2z^3+3z^2 has order " + order.str();
}

std::string c11_robust(const RunConfig& cfg) {
  std::ostringstream os;
  for (const char* name : {"f", "g", "h"}) {
    const Polynomial poly = construct_named(name).poly;
    MonodromyEngine base(poly, cfg.engine(), 2);
    const auto l1 = perms_of(base.generators(1));
    const auto l2 = perms_of(base.generators(2));
    const Automaton a = base.wreath_recursion();

    auto compare = [&](EngineOptions opts, const std::string& what) {
      MonodromyEngine other(poly, opts, 2);
      expect(perms_of(other.generators(1)) == l1, std::string(name) + ": level-1 generators change under " + what);
      expect(perms_of(other.generators(2)) == l2, std::string(name) + ": level-2 generators change under " + what);
      expect(match_up_to_renaming(other.wreath_recursion(), a).has_value(),
             std::string(name) + ": wreath recursion changes under " + what);
    };
    EngineOptions half = cfg.engine();
    half.step_fraction *= 0.5;
    compare(half, "step halving");
    const BaseChoice choice = choose_base_point(poly, base.punctures(), cfg.roots);
    for (double t : {0.3, 0.7}) {
      EngineOptions moved = cfg.engine();
      moved.base = choice.left + t * (choice.right - choice.left);
      compare(moved, "base point " + std::to_string(*moved.base));
    }
    os << name << " stable; ";
  }
  std::string s = os.str();
  return s.substr(0, s.size() - 2) + " (step halving, two base points)";
}

Criterion make(int id, std::string name, std::string (*body)(const RunConfig&), double budget_seconds) {
  return Criterion{id, name, [id, name, body, budget_seconds](const RunConfig& cfg) {
                     CriterionResult r{id, name, false, "", 0.0};
                     const auto t0 = std::chrono::steady_clock::now();
                     try {
                       r.detail = body(cfg);
                       r.passed = true;
                     } catch (const Failed& f) {
                       r.detail = f.why;
                     } catch (const std::exception& e) {
                       r.detail = std::string("error: ") + e.what();
                     }
                     r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                     if (r.passed && r.seconds > budget_seconds) {
                       r.passed = false;
                       r.detail += "; over time budget of " + std::to_string(static_cast<int>(budget_seconds)) + " s";
                     }
                     return r;
                   }};
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
  return {
      make(1, "f reproduction", c1_f, 5),
      make(2, "g reproduction", c2_g, 10),
      make(3, "h reproduction", c3_h, 60),
      make(4, "lifting equals unrolling", c4_cross, 120),
      make(5, "portrait determines group up to degree 5", c5_hurwitz, 60),
      make(6, "degree-6 portrait with two groups", c6_degree6, 120),
      make(7, "full-cycle groups have basic blocks", c7_main1, 120),
      make(8, "primitive top gives full-level blocks", c8_main3, 120),
      make(9, "power map non-basic blocks", c9_powers, 60),
      make(10, "conservative cycle systems", c10_conservative, 120),
      make(11, "numeric robustness", c11_robust, 120),
  };
}

std::vector<CriterionResult> run_acceptance(const RunConfig& config) {
  config.validate();
  std::vector<CriterionResult> out;
  for (const Criterion& c : acceptance_criteria()) out.push_back(c.run(config));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << "  [" << std::fixed
     << std::setprecision(2) << r.seconds << " s]  " << r.detail;
  return os.str();
}

}  // namespace imgb
