#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "imgb/automaton.hpp"
#include "imgb/continuation.hpp"
#include "imgb/paths.hpp"
#include "imgb/perm.hpp"
#include "imgb/polynomial.hpp"

namespace imgb {

struct EngineOptions {
  RootOptions roots;
  double merge_tolerance = 1e-8;
  /// Minimum distance (relative to scale) between a path and a puncture
  /// before a ray crossing counts as ambiguous.
  double clearance = 1e-3;
  Orientation orientation = Orientation::Counterclockwise;
  double ray_angle_degrees = kDefaultRayAngleDegrees;
  /// Largest continuation step as a fraction of the detour radius.
  double step_fraction = 0.25;
  /// Depth for closing up the post-critical orbit.
  unsigned postcritical_depth = 32;
  std::optional<double> base;
  std::optional<double> epsilon;
};

struct GeneratorAction {
  double puncture = 0.0;
  Permutation perm;
};

struct InfinityCycle {
  bool found = false;
  std::string ordering;         // description of the product that worked
  std::vector<std::size_t> order;  // generator indices, first acts first
  bool inverses = false;
  std::uint64_t cycle_length = 0;
};

/// Tries the product of the generators in listed order and in reverse, each
/// with and without inverting every factor; reports the first that is a
/// single cycle on all points.
InfinityCycle infinity_cycle_check(const std::vector<Permutation>& generators);

/// Midpoint of the widest interval between consecutive punctures (or beyond
/// the outermost ones) over which the level-1 fiber is real. Falls back to the
/// widest interval overall; `real_fiber` reports which case applied.
struct BaseChoice {
  double base = 0.0;
  bool real_fiber = false;
  double left = 0.0, right = 0.0;
};
BaseChoice choose_base_point(const Polynomial& poly, const std::vector<double>& punctures,
                             const RootOptions& roots = {});

/// Computes monodromy actions and the wreath recursion of a polynomial with
/// real post-critical set.
class MonodromyEngine {
 public:
  /// `max_level` bounds the levels requested later; it decides which
  /// critical values must be punctures when the post-critical orbit is
  /// infinite. Throws InputError for non-real punctures.
  MonodromyEngine(Polynomial poly, EngineOptions options = {}, unsigned max_level = 2);

  const Polynomial& polynomial() const { return poly_; }
  const EngineOptions& options() const { return options_; }
  unsigned degree() const { return poly_.degree(); }
  const std::vector<double>& punctures() const { return punctures_; }
  bool postcritically_finite() const { return pcf_; }
  double base_point() const { return base_; }
  double epsilon() const { return eps_; }
  /// Level-1 fiber is real and connecting paths run along the axis.
  bool real_convention() const { return real_convention_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::vector<LoopPath>& loops() const { return loops_; }
  const Path& connecting_path(std::size_t i) const { return connecting_.at(i); }

  /// Level-k points indexed by word rank (first letter most significant).
  const std::vector<Complex>& labels(unsigned level);

  /// One permutation of the level-n labels per puncture, by lifting each loop
  /// under the n-th iterate.
  std::vector<GeneratorAction> generators(unsigned level);

  /// States g1..gK (punctures ascending). Throws NumericError if the
  /// post-critical orbit does not close up.
  Automaton wreath_recursion();

  /// Section words before conversion, for reporting: [puncture][letter].
  const std::vector<std::vector<std::vector<PunctureLetter>>>& section_words();

  ContinuationOptions continuation_options() const;

 private:
  void compute_wreath();

  Polynomial poly_;
  EngineOptions options_;
  std::vector<double> punctures_;
  bool pcf_ = false;
  double base_ = 0.0;
  double eps_ = 0.0;
  double scale_ = 1.0;
  bool real_convention_ = true;
  std::vector<std::string> warnings_;
  std::vector<LoopPath> loops_;
  std::vector<Path> connecting_;
  std::map<unsigned, std::vector<Complex>> labels_;
  std::optional<Automaton> automaton_;
  std::vector<std::vector<std::vector<PunctureLetter>>> words_;
};

}  // namespace imgb
