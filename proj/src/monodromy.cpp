#include "imgb/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

namespace {

constexpr double kRealTolerance = 1e-9;

bool all_real(const std::vector<Complex>& z, double scale) {
  for (Complex w : z)
    if (std::abs(w.imag()) > kRealTolerance * scale) return false;
  return true;
}

}  // namespace

InfinityCycle infinity_cycle_check(const std::vector<Permutation>& generators) {
  InfinityCycle r;
  if (generators.empty()) return r;
  const std::size_t degree = generators.front().degree();
  std::vector<std::size_t> forward(generators.size());
  std::iota(forward.begin(), forward.end(), std::size_t{0});
  std::vector<std::size_t> backward(forward.rbegin(), forward.rend());
  for (const auto* order : {&forward, &backward}) {
    for (bool inv : {false, true}) {
      std::vector<Permutation> factors;
      for (std::size_t k : *order) factors.push_back(inv ? generators[k].inverse() : generators[k]);
      const Permutation prod = product_in_order(factors, degree);
      if (prod.is_full_cycle()) {
        r.found = true;
        r.order = *order;
        r.inverses = inv;
        r.cycle_length = degree;
        std::ostringstream os;
        os << (order == &forward ? "ascending" : "descending") << (inv ? ", inverted" : "");
        r.ordering = os.str();
        return r;
      }
    }
  }
  return r;
}

BaseChoice choose_base_point(const Polynomial& poly, const std::vector<double>& punctures, const RootOptions& roots) {
  std::vector<double> v = punctures;
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> intervals;
  if (v.empty()) {
    intervals.emplace_back(-1.0, 1.0);
  } else {
    const double w = std::max(1.0, v.back() - v.front());
    intervals.emplace_back(v.front() - w, v.front());
    for (std::size_t k = 1; k < v.size(); ++k) intervals.emplace_back(v[k - 1], v[k]);
    intervals.emplace_back(v.back(), v.back() + w);
  }
  const double tie = 1e-12;
  BaseChoice best;
  double best_width = -1.0;
  bool best_real = false;
  for (auto [l, r] : intervals) {
    const double mid = 0.5 * (l + r);
    const auto fiber = preimages(poly, Complex{mid}, roots);
    const bool real = all_real(fiber, point_scale(fiber));
    const double width = r - l;
    bool take = false;
    if (real != best_real)
      take = real;
    else if (width > best_width + tie)
      take = true;
    else if (std::abs(width - best_width) <= tie && mid > best.base)
      take = true;
    if (best_width < 0.0 || take) {
      best = BaseChoice{mid, real, l, r};
      best_width = width;
      best_real = real;
    }
  }
  return best;
}

MonodromyEngine::MonodromyEngine(Polynomial poly, EngineOptions options, unsigned max_level)
    : poly_(std::move(poly)), options_(options) {
  if (poly_.degree() < 2) throw InputError("polynomial degree must be at least 2");
  if (max_level < 1) throw InputError("level must be at least 1");

  const CriticalData cd = critical_data(poly_, options_.postcritical_depth, options_.merge_tolerance, options_.roots);
  pcf_ = cd.finite;
  std::vector<Complex> pc = pcf_ ? cd.postcritical
                                 : iterate_critical_values(poly_, max_level, options_.merge_tolerance, options_.roots);
  if (!pcf_)
    warnings_.push_back("post-critical orbit does not close up; punctures are the critical values of the iterate");
  scale_ = point_scale(pc);
  for (Complex z : pc) {
    if (std::abs(z.imag()) > kRealTolerance * scale_)
      throw InputError("non-real post-critical points are not supported by the real-axis loop convention");
    punctures_.push_back(z.real());
  }
  std::sort(punctures_.begin(), punctures_.end());

  if (options_.base) {
    base_ = *options_.base;
  } else {
    base_ = choose_base_point(poly_, punctures_, options_.roots).base;
  }
  for (double v : punctures_)
    if (std::abs(v - base_) < options_.clearance * scale_)
      throw InputError("base point is too close to a post-critical point");

  std::vector<Complex> fiber = preimages(poly_, Complex{base_}, options_.roots);
  real_convention_ = all_real(fiber, point_scale(fiber));
  if (real_convention_) {
    for (Complex& z : fiber) z = Complex{z.real()};
  } else {
    warnings_.push_back(
        "level-1 fiber is not real; connecting paths go over the top and labels are sorted by (real, imaginary)");
  }
  sort_points(fiber);
  labels_[1] = fiber;

  eps_ = options_.epsilon ? *options_.epsilon : default_epsilon(punctures_, base_, fiber);
  loops_ = build_loops(punctures_, base_, eps_, options_.orientation);

  double height = 1.0;
  for (Complex z : fiber) height = std::max(height, 1.0 + 2.0 * std::abs(z.imag()));
  for (Complex z : fiber)
    connecting_.push_back(real_convention_ ? axis_path(base_, z.real(), punctures_, eps_)
                                           : over_the_top_path(base_, z, punctures_, eps_, height));
}

ContinuationOptions MonodromyEngine::continuation_options() const {
  ContinuationOptions o;
  o.max_step = options_.step_fraction * eps_;
  return o;
}

const std::vector<Complex>& MonodromyEngine::labels(unsigned level) {
  if (level < 1) throw PreconditionError("labels: level must be at least 1");
  if (auto it = labels_.find(level); it != labels_.end()) return it->second;
  const std::vector<Complex> prev = labels(level - 1);
  const IteratedMap map(poly_, level - 1);
  std::vector<Complex> out;
  out.reserve(prev.size() * degree());
  for (std::size_t i = 0; i < degree(); ++i) {
    auto r = continue_along(map, connecting_[i], prev, continuation_options());
    out.insert(out.end(), r.endpoints.begin(), r.endpoints.end());
  }
  // distinctness is required for matching later
  match_points(out, out);
  return labels_[level] = std::move(out);
}

std::vector<GeneratorAction> MonodromyEngine::generators(unsigned level) {
  const std::vector<Complex>& labs = labels(level);
  const IteratedMap map(poly_, level);
  std::vector<GeneratorAction> out;
  for (const LoopPath& loop : loops_) {
    auto r = continue_along(map, loop.path, labs, continuation_options());
    auto idx = match_points(r.endpoints, labs);
    std::vector<Point> images(idx.begin(), idx.end());
    out.push_back(GeneratorAction{loop.puncture, Permutation::from_images(std::move(images))});
  }
  return out;
}

void MonodromyEngine::compute_wreath() {
  if (!pcf_) throw NumericError("wreath recursion needs a post-critically finite polynomial");
  const unsigned d = degree();
  const std::vector<Complex>& fiber = labels(1);
  const IteratedMap map(poly_, 1);
  std::vector<Complex> pc;
  for (double v : punctures_) pc.emplace_back(v);
  ContinuationOptions co = continuation_options();
  co.guard_points = pc;
  co.record_trajectories = true;
  const double spacing = co.max_step;

  std::vector<std::vector<Complex>> pis, pis_back;
  for (std::size_t i = 0; i < d; ++i) {
    pis.push_back(connecting_[i].sample(spacing));
    pis_back.push_back(connecting_[i].reversed().sample(spacing));
  }

  Automaton a(d);
  std::vector<std::size_t> states;
  for (std::size_t k = 0; k < loops_.size(); ++k) states.push_back(a.declare("g" + std::to_string(k + 1)));
  words_.assign(loops_.size(), {});
  const int flip = options_.orientation == Orientation::Counterclockwise ? 1 : -1;
  for (std::size_t k = 0; k < loops_.size(); ++k) {
    auto r = continue_along(map, loops_[k].path, fiber, co);
    auto idx = match_points(r.endpoints, fiber);
    std::vector<StateWord> sections(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Complex> poly_line = pis[i];
      poly_line.insert(poly_line.end(), r.trajectories[i].begin() + 1, r.trajectories[i].end());
      poly_line.insert(poly_line.end(), pis_back[idx[i]].begin() + 1, pis_back[idx[i]].end());
      auto word = homotopy_word(poly_line, pc, options_.clearance * eps_, options_.ray_angle_degrees);
      for (const auto& l : word) sections[i].push_back(Letter{states[l.puncture], flip * l.exponent});
      words_[k].push_back(std::move(word));
    }
    std::vector<Point> images(idx.begin(), idx.end());
    a.define(states[k], Permutation::from_images(std::move(images)), std::move(sections));
  }
  automaton_ = std::move(a);
}

Automaton MonodromyEngine::wreath_recursion() {
  if (!automaton_) compute_wreath();
  return *automaton_;
}

const std::vector<std::vector<std::vector<PunctureLetter>>>& MonodromyEngine::section_words() {
  if (!automaton_) compute_wreath();
  return words_;
}

}  // namespace imgb
