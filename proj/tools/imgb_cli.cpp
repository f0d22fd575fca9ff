#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "imgb/errors.hpp"
#include "imgb/reports.hpp"
#include "imgb/suite.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kNumeric = 2, kBadInput = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw imgb::InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated monodromy groups of real polynomials and their block systems"};
  app.require_subcommand(1);
  app.fallthrough();

  imgb::RunConfig cfg;
  unsigned level = 1;
  std::optional<double> base;
  std::string orientation = "ccw";
  double tol_root = cfg.roots.tolerance;
  double tol_clearance = cfg.clearance;

  app.add_option("--level", level, "deepest tree level to analyze")->envname("IMGB_LEVEL")->check(CLI::Range(1u, 6u));
  app.add_option("--base", base, "base point on the real axis")->envname("IMGB_BASE");
  app.add_option("--seed", cfg.seed, "seed for the random property suites")->envname("IMGB_SEED");
  app.add_option("--tol-root", tol_root, "relative root residual target")->envname("IMGB_TOL_ROOT");
  app.add_option("--tol-clearance", tol_clearance, "path clearance from punctures, relative to the detour radius")
      ->envname("IMGB_TOL_CLEARANCE");
  app.add_option("--orientation", orientation, "loop orientation")
      ->envname("IMGB_ORIENTATION")
      ->check(CLI::IsMember({"ccw", "cw"}));
  app.add_flag("--json", cfg.json, "print JSON")->envname("IMGB_JSON");
  app.add_option("--cap-closure", cfg.closure_cap, "largest group enumerated by closure before Schreier-Sims")
      ->envname("IMGB_CAP_CLOSURE");

  auto* analyze = app.add_subcommand("analyze", "monodromy, wreath recursion and blocks of a polynomial");
  std::string coeff_file;
  analyze->add_option("file", coeff_file, "coefficient file, constant term first")->required();

  auto* construct = app.add_subcommand("construct", "build one of the example polynomials");
  std::string which;
  unsigned power_degree = 0;
  std::string out_file;
  construct->add_option("which", which, "f, g, h, conservative-cubic or power")
      ->required()
      ->check(CLI::IsMember({"f", "g", "h", "conservative-cubic", "power"}));
  construct->add_option("degree", power_degree, "degree for power");
  construct->add_option("-o,--out", out_file, "write the coefficient file here");

  auto* verify = app.add_subcommand("verify-paper", "run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    cfg.roots.tolerance = tol_root;
    cfg.clearance = tol_clearance;
    cfg.orientation = orientation == "cw" ? imgb::Orientation::Clockwise : imgb::Orientation::Counterclockwise;
    cfg.level_cap = std::max(cfg.level_cap, level);
    cfg.validate();

    if (*analyze) {
      imgb::AnalyzeConfig ac;
      ac.level = level;
      ac.engine = cfg.engine();
      ac.engine.base = base;
      ac.closure_cap = cfg.closure_cap;
      const auto poly = imgb::Polynomial::parse_coefficients(read_file(coeff_file));
      const auto report = imgb::analyze(poly, ac);
      if (cfg.json)
        std::cout << imgb::to_json(report).dump(2) << '\n';
      else
        std::cout << imgb::to_text(report);
      return kOk;
    }

    if (*construct) {
      if (which == "power" && power_degree < 2) throw imgb::InputError("construct power needs a degree of at least 2");
      const auto report = imgb::construct_named(which, power_degree);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw imgb::InputError("cannot write " + out_file);
        out << report.poly.to_coefficient_text();
      }
      if (cfg.json) {
        std::cout << imgb::Json{{"name", report.name}, {"details", report.details}}.dump(2) << '\n';
      } else {
        // Report as comments so the whole output is itself a coefficient file.
        std::istringstream lines(imgb::to_text(report));
        for (std::string line; std::getline(lines, line);) std::cout << "# " << line << '\n';
        if (out_file.empty()) std::cout << report.poly.to_coefficient_text();
      }
      return kOk;
    }

    if (*verify) {
      const auto results = imgb::run_acceptance(cfg);
      bool all = true;
      imgb::Json j = imgb::Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        if (cfg.json)
          j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
        else
          std::cout << imgb::format_result(r) << '\n';
      }
      if (cfg.json) std::cout << j.dump(2) << '\n';
      return all ? kOk : kVerifyFailed;
    }
  } catch (const imgb::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const imgb::PreconditionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const imgb::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const imgb::HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
