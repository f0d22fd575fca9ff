#pragma once

#include <cstddef>
#include <vector>

#include "imgb/paths.hpp"
#include "imgb/polynomial.hpp"

namespace imgb {

struct ContinuationOptions {
  /// Largest step along the path (arc length in the target plane).
  double max_step = 0.05;
  int max_newton = 8;
  double newton_tolerance = 1e-13;
  /// Relative to the path length; smaller steps are an underflow.
  double min_step_fraction = 1e-12;
  /// Each tracked point may move by less than half its distance to the
  /// nearest of these per step (keeps recorded trajectories faithful).
  std::vector<Complex> guard_points;
  bool record_trajectories = false;
};

struct ContinuationResult {
  std::vector<Complex> endpoints;                  // in tracked order
  std::vector<std::vector<Complex>> trajectories;  // when recorded
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Tracks every point of `start` (a full fiber of `map` over path.start())
/// along the path by predictor-corrector continuation: the previous point is
/// the predictor and Newton on map(z) = path(s) the corrector. A step is
/// accepted when every corrector converges within max_newton iterations and
/// every point moves by less than half the smallest pairwise separation;
/// otherwise the step is halved. Throws NumericError on step underflow,
/// reporting the path parameter.
ContinuationResult continue_along(const IteratedMap& map, const Path& path, const std::vector<Complex>& start,
                                  const ContinuationOptions& options = {});

/// Index of the nearest point in `targets` for each of `points`; throws
/// NumericError unless every match is closer than a quarter of the
/// targets' minimal separation and the matching is a bijection.
std::vector<std::size_t> match_points(const std::vector<Complex>& points, const std::vector<Complex>& targets);

}  // namespace imgb
