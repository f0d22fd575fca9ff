#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "imgb/polynomial.hpp"

namespace imgb {

struct Segment {
  Complex from;
  Complex to;
};

/// Circular arc centered at `center`, from angle `start` sweeping by `sweep`
/// radians (positive is counterclockwise).
struct Arc {
  Complex center;
  double radius = 0.0;
  double start = 0.0;
  double sweep = 0.0;
};

using PathPiece = std::variant<Segment, Arc>;

/// A piecewise path of segments and arcs, parametrized by arc length.
class Path {
 public:
  Path() = default;
  explicit Path(Complex start) : start_(start), end_(start) {}

  Complex start() const { return start_; }
  Complex end() const { return end_; }
  const std::vector<PathPiece>& pieces() const { return pieces_; }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  void line_to(Complex to);
  /// Arc around `center` starting at the current end point.
  void arc_around(Complex center, double sweep);
  void append(const Path& other);

  Path reversed() const;
  /// Point at arc length s (clamped to [0, length]).
  Complex at(double s) const;
  /// Polyline through the path with spacing at most `spacing`.
  std::vector<Complex> sample(double spacing) const;

 private:
  void push(PathPiece piece, double len);

  Complex start_{0.0};
  Complex end_{0.0};
  std::vector<PathPiece> pieces_;
  std::vector<double> cumulative_;
};

enum class Orientation { Counterclockwise, Clockwise };

const char* to_string(Orientation o);

/// A closed path at the base point encircling one puncture once.
struct LoopPath {
  Path path;
  Complex base;
  double puncture = 0.0;
  std::size_t puncture_index = 0;
  Orientation orientation = Orientation::Counterclockwise;
  double epsilon = 0.0;
};

/// Along the real axis from p to x, passing each puncture strictly in
/// between by a lower half-plane semicircle of radius eps.
Path axis_path(double p, double x, const std::vector<double>& punctures, double eps);

/// Up from p to height `height`, across, and down to x, passing punctures
/// that lie near the descending line by a semicircle on their right.
Path over_the_top_path(double p, Complex x, const std::vector<double>& punctures, double eps, double height);

/// One loop per puncture (ascending): along the axis toward the puncture
/// with lower detours, once around it, and back. Throws PreconditionError if
/// eps is too large for the configuration.
std::vector<LoopPath> build_loops(const std::vector<double>& punctures, double p, double eps,
                                  Orientation orientation = Orientation::Counterclockwise);

/// A third of the smallest gap among the punctures and p, and between the
/// fiber points and the punctures.
double default_epsilon(const std::vector<double>& punctures, double p, const std::vector<Complex>& fiber);

/// One letter of a word in the free group on the punctures; generator k is
/// the standard counterclockwise loop around puncture k.
struct PunctureLetter {
  std::size_t puncture = 0;
  int exponent = 1;

  friend bool operator==(const PunctureLetter&, const PunctureLetter&) = default;
};

inline constexpr double kDefaultRayAngleDegrees = 75.0;

/// Reduced word of a closed polyline, read from its signed crossings of one
/// ray per puncture (all rays at the same angle above the axis). Throws
/// NumericError if the polyline passes within `clearance` of a puncture.
std::vector<PunctureLetter> homotopy_word(const std::vector<Complex>& polyline, const std::vector<Complex>& punctures,
                                          double clearance, double ray_angle_degrees = kDefaultRayAngleDegrees);

std::string word_to_string(const std::vector<PunctureLetter>& word);

}  // namespace imgb
