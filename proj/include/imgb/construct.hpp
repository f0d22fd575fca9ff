#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "imgb/polynomial.hpp"

namespace imgb {

/// The degree-6 polynomial with critical points 0, 1 - 1/s, 1, 1 + 1/s, 2
/// (s^2 = 2 + sqrt 3), critical values 0, 1, 2, and f(1) = 1.
Polynomial build_f();
/// The scale s = sqrt(2 + sqrt 3) used by build_f.
double build_f_scale();

Polynomial power_map(unsigned degree);

/// Expression over slot names, numbers, and the polynomial P applied to an
/// expression.
struct Expr {
  enum class Kind { Number, Slot, Apply } kind = Kind::Number;
  double number = 0.0;
  std::string slot;
  std::shared_ptr<Expr> arg;

  static Expr parse(std::string_view text);
  std::string to_string() const;
  /// Nesting depth of P.
  int depth() const;
};

/// A real critical portrait with unknown critical points and target
/// equations; the polynomial is lead * integral_0^z prod (t - c_i) dt + const.
///
/// Text form, one item per line:
///   slots: c1 < c2 < 0 < c3 < 1
///   P(c1) = c1
///   require: 0 < P(b) < c1
struct PortraitSpec {
  struct Slot {
    std::string name;  // empty for a fixed number
    double value = 0.0;
  };
  struct Equation {
    Expr lhs, rhs;
  };
  std::vector<Slot> slots;  // ascending order is required
  std::vector<Equation> equations;
  std::vector<std::vector<Expr>> requirements;  // strictly increasing chains

  std::vector<std::string> free_slots() const;
  /// Unknowns are the lead, the constant and the free slots.
  std::size_t unknown_count() const { return 2 + free_slots().size(); }

  static PortraitSpec parse(std::string_view text);
  std::string to_string() const;
};

PortraitSpec g_spec();
PortraitSpec h_spec();
PortraitSpec conservative_cubic_spec();

struct PortraitSolution {
  Polynomial poly;
  double lead = 0.0;
  double constant = 0.0;
  std::map<std::string, double> slots;  // free slots
  std::vector<double> critical_points;  // all slots, ascending
  double max_residual = 0.0;
  std::size_t solutions_found = 0;      // distinct admissible solutions
  std::size_t rejected_solutions = 0;   // converged but violating order or requirements
};

struct SolveOptions {
  unsigned grid_points = 8;
  int max_newton = 100;
  double residual_tolerance = 1e-10;
};

/// Grid scan over the free slots followed by Newton's method with a
/// finite-difference Jacobian. Returns the first admissible solution in
/// (slot values) order. Throws NumericError if none converges.
PortraitSolution solve_portrait(const PortraitSpec& spec, const SolveOptions& options = {});

/// Polynomial from explicit parameters.
Polynomial portrait_polynomial(double lead, double constant, const std::vector<double>& critical_points);

}  // namespace imgb
