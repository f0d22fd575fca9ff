#include "imgb/reports.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string fmt(double x, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << (std::abs(x) < 1e-11 ? 0.0 : x);
  return os.str();
}

std::string fmt(Complex z) {
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

}  // namespace

AnalyzeReport analyze(const Polynomial& poly, const AnalyzeConfig& config) {
  if (config.level < 1) throw InputError("level must be at least 1");
  MonodromyEngine engine(poly, config.engine, config.level);
  AnalyzeReport r;
  r.poly = poly;
  r.critical = critical_data(poly, config.engine.postcritical_depth, config.engine.merge_tolerance, config.engine.roots);
  r.punctures = engine.punctures();
  r.postcritically_finite = engine.postcritically_finite();
  r.base = engine.base_point();
  r.epsilon = engine.epsilon();
  r.real_convention = engine.real_convention();
  r.orientation = config.engine.orientation;

  const unsigned d = poly.degree();
  for (unsigned n = 1; n <= config.level; ++n) {
    LevelReport lr;
    lr.level = n;
    lr.generators = engine.generators(n);
    std::vector<Permutation> perms;
    for (const auto& g : lr.generators) perms.push_back(g.perm);
    const TreeShape shape(d, n);
    PermGroup group(shape.leaves(), perms);
    lr.order = group.order(config.closure_cap);
    lr.transitive = group.is_transitive();
    lr.infinity = infinity_cycle_check(perms);
    if (lr.transitive && shape.leaves() <= config.lattice_cap) {
      lr.lattice_computed = true;
      for (PointSet& b : block_lattice_at(group, 0, config.lattice_cap))
        lr.blocks.push_back(make_block_report(shape, std::move(b)));
      if (n >= 2) {
        const std::size_t branch = shape.level_size(n - 1);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = i + 1; j < d; ++j) {
            const Point seed[2] = {static_cast<Point>(i * branch), static_cast<Point>(j * branch)};
            lr.fatou.push_back({{i, j}, fatou_oracle(shape, group, seed)});
          }
      }
    }
    r.levels.push_back(std::move(lr));
  }

  if (r.postcritically_finite && r.real_convention) {
    try {
      r.automaton = engine.wreath_recursion();
      for (const auto& state : engine.section_words()) {
        std::vector<std::string> row;
        for (const auto& w : state) row.push_back(w.empty() ? "id" : word_to_string(w));
        r.section_words.push_back(std::move(row));
      }
    } catch (const NumericError& e) {
      r.warnings.push_back(std::string("wreath recursion unavailable: ") + e.what());
    }
  }
  r.warnings.insert(r.warnings.begin(), engine.warnings().begin(), engine.warnings().end());
  return r;
}

Json permutation_json(const Permutation& p) {
  Json cycles = Json::array();
  for (const Cycle& c : p.cycles()) {
    if (c.size() < 2) continue;
    Json cj = Json::array();
    for (Point x : c) cj.push_back(x + 1);
    cycles.push_back(cj);
  }
  return cycles;
}

Json block_json(const TreeShape& shape, const BlockReport& block) {
  Json pts = Json::array();
  for (Point x : block.points) pts.push_back(shape.word_string(x));
  return Json{{"points", pts},
              {"size", block.points.size()},
              {"class", to_string(block.shape.kind)},
              {"height", block.shape.height},
              {"basic", block.shape.basic()}};
}

Json to_json(const AnalyzeReport& r) {
  Json j;
  Json coeffs = Json::array();
  for (Complex c : r.poly.coefficients()) coeffs.push_back(complex_json(c));
  j["degree"] = r.poly.degree();
  j["coefficients"] = coeffs;
  Json crit = Json::array();
  for (const auto& c : r.critical.points)
    crit.push_back(Json{{"point", complex_json(c.center)}, {"multiplicity", c.multiplicity}});
  j["critical_points"] = crit;
  Json vals = Json::array();
  for (Complex v : r.critical.values) vals.push_back(complex_json(v));
  j["critical_values"] = vals;
  j["postcritically_finite"] = r.postcritically_finite;
  j["punctures"] = r.punctures;
  j["base"] = r.base;
  j["epsilon"] = r.epsilon;
  j["orientation"] = to_string(r.orientation);
  j["real_convention"] = r.real_convention;
  j["warnings"] = r.warnings;
  Json levels = Json::array();
  for (const auto& lr : r.levels) {
    const TreeShape shape(r.poly.degree(), lr.level);
    Json l;
    l["level"] = lr.level;
    Json gens = Json::array();
    for (std::size_t k = 0; k < lr.generators.size(); ++k)
      gens.push_back(Json{{"name", "g" + std::to_string(k + 1)},
                          {"puncture", lr.generators[k].puncture},
                          {"cycles", permutation_json(lr.generators[k].perm)}});
    l["generators"] = gens;
    l["order"] = lr.order.str();
    l["transitive"] = lr.transitive;
    Json blocks = Json::array();
    for (const auto& b : lr.blocks) blocks.push_back(block_json(shape, b));
    l["blocks"] = lr.lattice_computed ? blocks : Json(nullptr);
    l["infinity_cycle"] = Json{{"found", lr.infinity.found}, {"ordering", lr.infinity.ordering}};
    Json fatou = Json::array();
    for (const auto& [pair, f] : lr.fatou)
      fatou.push_back(Json{{"branches", Json::array({pair.first + 1, pair.second + 1})},
                           {"block_size", f.block_size},
                           {"threshold", f.threshold},
                           {"exceeds", f.exceeds}});
    l["fatou"] = fatou;
    levels.push_back(l);
  }
  j["levels"] = levels;
  if (r.automaton) {
    j["automaton"] = r.automaton->to_text();
    j["section_words"] = r.section_words;
  } else {
    j["automaton"] = nullptr;
  }
  return j;
}

std::string to_text(const AnalyzeReport& r) {
  std::ostringstream os;
  os << "polynomial: " << r.poly.to_string() << '\n';
  os << "critical points:";
  for (const auto& c : r.critical.points)
    os << ' ' << fmt(c.center) << (c.multiplicity > 1 ? " (x" + std::to_string(c.multiplicity) + ")" : "");
  os << "\ncritical values:";
  for (Complex v : r.critical.values) os << ' ' << fmt(v);
  os << "\npost-critical points:";
  for (double v : r.punctures) os << ' ' << fmt(v);
  os << (r.postcritically_finite ? "" : " (orbit not closed)") << '\n';
  os << "base point: " << fmt(r.base) << "  detour radius: " << fmt(r.epsilon, 4)
     << "  orientation: " << to_string(r.orientation) << '\n';
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  for (const auto& lr : r.levels) {
    const TreeShape shape(r.poly.degree(), lr.level);
    os << "\nlevel " << lr.level << " (" << shape.leaves() << " points)\n";
    for (std::size_t k = 0; k < lr.generators.size(); ++k)
      os << "  g" << k + 1 << " [" << fmt(lr.generators[k].puncture) << "]: " << lr.generators[k].perm.to_string()
         << '\n';
    os << "  group order: " << lr.order << (lr.transitive ? "" : " (not transitive)") << '\n';
    os << "  infinity cycle: " << (lr.infinity.found ? "full cycle, " + lr.infinity.ordering : "none found") << '\n';
    if (lr.lattice_computed) {
      os << "  blocks containing " << shape.word_string(0) << ":\n";
      for (const auto& b : lr.blocks) {
        os << "    {";
        for (std::size_t k = 0; k < b.points.size(); ++k) os << (k ? "," : "") << shape.word_string(b.points[k]);
        os << "} " << to_string(b.shape.kind) << '\n';
      }
    } else {
      os << "  block lattice skipped\n";
    }
    for (const auto& [pair, f] : lr.fatou)
      os << "  branches " << pair.first + 1 << "," << pair.second + 1 << ": minimal block " << f.block_size
         << (f.exceeds ? " > " : " <= ") << f.threshold << '\n';
  }
  if (r.automaton) {
    os << "\nwreath recursion:\n" << r.automaton->to_text();
  }
  return os.str();
}

ConstructReport construct_named(const std::string& which, unsigned degree) {
  ConstructReport r;
  r.name = which;
  auto values_at = [](const Polynomial& p, const std::vector<double>& xs) {
    Json out = Json::array();
    for (double x : xs) out.push_back(p(x));
    return out;
  };
  auto solved = [&](const PortraitSpec& spec) {
    PortraitSolution s = solve_portrait(spec);
    r.poly = s.poly;
    r.details["spec"] = spec.to_string();
    r.details["lead"] = s.lead;
    r.details["constant"] = s.constant;
    r.details["critical_points"] = s.critical_points;
    r.details["critical_values"] = values_at(s.poly, s.critical_points);
    r.details["max_residual"] = s.max_residual;
    r.details["solutions_found"] = s.solutions_found;
    r.details["rejected_solutions"] = s.rejected_solutions;
    return s;
  };
  if (which == "f") {
    r.poly = build_f();
    const double s = build_f_scale();
    const std::vector<double> crit{0.0, 1.0 - 1.0 / s, 1.0, 1.0 + 1.0 / s, 2.0};
    const std::vector<double> expected{0.0, 2.0, 1.0, 2.0, 0.0};
    double worst = 0.0, worst_derivative = 0.0;
    const Polynomial dp = r.poly.derivative();
    for (std::size_t k = 0; k < crit.size(); ++k) {
      worst = std::max(worst, std::abs(r.poly(crit[k]) - expected[k]));
      worst_derivative = std::max(worst_derivative, std::abs(dp(Complex{crit[k]})));
    }
    r.details["scale"] = s;
    r.details["critical_points"] = crit;
    r.details["critical_values"] = values_at(r.poly, crit);
    r.details["max_residual"] = std::max(worst, worst_derivative);
    if (worst > 1e-10 || worst_derivative > 1e-10) throw NumericError("closed-form f misses its critical values");
  } else if (which == "g") {
    solved(g_spec());
  } else if (which == "h") {
    PortraitSolution s = solved(h_spec());
    const double b = s.slots.at("b");
    const double a = s.poly(b);
    r.details["b"] = b;
    r.details["b_minus_one"] = b - 1.0;
    r.details["a"] = a;
    r.details["c1"] = s.slots.at("c1");
    r.details["c2"] = s.slots.at("c2");
    r.details["a_between_0_and_c1"] = a > 0.0 && a < s.slots.at("c1");
  } else if (which == "conservative-cubic") {
    solved(conservative_cubic_spec());
  } else if (which == "power") {
    r.poly = power_map(degree);
    r.name = "power " + std::to_string(degree);
    r.details["degree"] = degree;
  } else {
    throw InputError("unknown construction: " + which);
  }
  Json coeffs = Json::array();
  for (Complex c : r.poly.coefficients()) coeffs.push_back(c.real());
  r.details["coefficients"] = coeffs;
  return r;
}

std::string to_text(const ConstructReport& r) {
  std::ostringstream os;
  os << "construction: " << r.name << '\n';
  os << "polynomial: " << r.poly.to_string() << '\n';
  for (const auto& [key, value] : r.details.items()) {
    if (key == "coefficients" || key == "spec") continue;
    os << key << ": " << value.dump() << '\n';
  }
  return os.str();
}

}  // namespace imgb
