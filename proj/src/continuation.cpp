#include "imgb/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

namespace {

double min_separation(const std::vector<Complex>& z) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) m = std::min(m, std::abs(z[i] - z[j]));
  return m;
}

double distance_to(const std::vector<Complex>& guards, Complex z) {
  double m = std::numeric_limits<double>::infinity();
  for (Complex g : guards) m = std::min(m, std::abs(z - g));
  return m;
}

}  // namespace

ContinuationResult continue_along(const IteratedMap& map, const Path& path, const std::vector<Complex>& start,
                                  const ContinuationOptions& options) {
  ContinuationResult r;
  std::vector<Complex> z = start;
  if (options.record_trajectories)
    for (Complex p : z) r.trajectories.push_back({p});
  const double total = path.length();
  if (total == 0.0 || z.empty()) {
    r.endpoints = z;
    return r;
  }

  double s = 0.0;
  double h = std::min(options.max_step, total);
  double sep = min_separation(z);
  std::vector<Complex> next(z.size());
  while (s < total) {
    const bool last = s + h >= total;
    const double s_next = last ? total : s + h;
    const Complex target = path.at(s_next);
    bool ok = true;
    bool easy = true;
    for (std::size_t i = 0; i < z.size() && ok; ++i) {
      Complex w = z[i];
      bool converged = false;
      for (int it = 0; it < options.max_newton; ++it) {
        auto [v, dv] = map.eval_with_derivative(w);
        if (dv == Complex{0.0}) break;
        const Complex dw = (v - target) / dv;
        const bool tiny_residual =
            std::abs(v - target) <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(target));
        w -= dw;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) break;
        // near clustered points the residual floor can sit above the absolute
        // tolerance; a correction far below the separation is enough to track
        const double enough = std::max(options.newton_tolerance * std::max(1.0, std::abs(w)), 1e-9 * sep);
        if (tiny_residual || std::abs(dw) <= enough) {
          converged = true;
          if (it > 3) easy = false;
          break;
        }
      }
      const double move = std::abs(w - z[i]);
      if (!converged || !(move < 0.5 * sep)) ok = false;
      if (ok && !options.guard_points.empty() && !(move < 0.5 * distance_to(options.guard_points, z[i]))) ok = false;
      next[i] = w;
    }
    if (!ok) {
      ++r.rejected_steps;
      h *= 0.5;
      if (h < options.min_step_fraction * total) {
        std::ostringstream os;
        os << "continuation step underflow at path parameter t=" << s / total
           << " (path too close to a critical value)";
        throw NumericError(os.str());
      }
      continue;
    }
    ++r.accepted_steps;
    s = s_next;
    z = next;
    sep = min_separation(z);
    if (options.record_trajectories)
      for (std::size_t i = 0; i < z.size(); ++i) r.trajectories[i].push_back(z[i]);
    if (easy) h = std::min(2.0 * h, options.max_step);
  }
  r.endpoints = z;
  return r;
}

std::vector<std::size_t> match_points(const std::vector<Complex>& points, const std::vector<Complex>& targets) {
  if (points.size() != targets.size()) throw NumericError("fiber size changed during continuation");
  const double sep = targets.size() > 1 ? min_separation(targets) : 1.0;
  std::vector<std::size_t> out(points.size());
  std::vector<bool> used(targets.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const double d = std::abs(points[i] - targets[j]);
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    if (!(dist < 0.25 * sep) || used[best]) throw NumericError("continuation endpoint does not match the fiber");
    used[best] = true;
    out[i] = best;
  }
  return out;
}

}  // namespace imgb
