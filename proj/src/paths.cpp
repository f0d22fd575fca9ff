#include "imgb/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "imgb/errors.hpp"

namespace imgb {

namespace {

constexpr double kPi = std::numbers::pi;

Complex arc_point(const Arc& a, double u) { return a.center + std::polar(a.radius, a.start + a.sweep * u); }

}  // namespace

void Path::push(PathPiece piece, double len) {
  pieces_.push_back(piece);
  cumulative_.push_back(length() + len);
}

void Path::line_to(Complex to) {
  const double len = std::abs(to - end_);
  if (len == 0.0) return;
  push(Segment{end_, to}, len);
  end_ = to;
}

void Path::arc_around(Complex center, double sweep) {
  const Complex rel = end_ - center;
  Arc a{center, std::abs(rel), std::arg(rel), sweep};
  if (a.radius == 0.0 || sweep == 0.0) return;
  push(a, a.radius * std::abs(sweep));
  end_ = arc_point(a, 1.0);
}

void Path::append(const Path& other) {
  if (pieces_.empty() && cumulative_.empty()) {
    *this = other;
    return;
  }
  if (std::abs(other.start_ - end_) > 1e-12 * std::max(1.0, std::abs(end_)))
    throw PreconditionError("Path::append: paths do not meet");
  for (std::size_t k = 0; k < other.pieces_.size(); ++k) {
    const double len = other.cumulative_[k] - (k ? other.cumulative_[k - 1] : 0.0);
    push(other.pieces_[k], len);
  }
  end_ = other.end_;
}

Path Path::reversed() const {
  Path r(end_);
  for (std::size_t k = pieces_.size(); k-- > 0;) {
    const double len = cumulative_[k] - (k ? cumulative_[k - 1] : 0.0);
    if (const auto* s = std::get_if<Segment>(&pieces_[k])) {
      r.push(Segment{s->to, s->from}, len);
    } else {
      const Arc& a = std::get<Arc>(pieces_[k]);
      r.push(Arc{a.center, a.radius, a.start + a.sweep, -a.sweep}, len);
    }
  }
  r.end_ = start_;
  return r;
}

Complex Path::at(double s) const {
  if (pieces_.empty() || s <= 0.0) return start_;
  if (s >= length()) return end_;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin());
  const double begin = k ? cumulative_[k - 1] : 0.0;
  const double u = (s - begin) / (cumulative_[k] - begin);
  if (const auto* seg = std::get_if<Segment>(&pieces_[k])) return seg->from + (seg->to - seg->from) * u;
  return arc_point(std::get<Arc>(pieces_[k]), u);
}

std::vector<Complex> Path::sample(double spacing) const {
  std::vector<Complex> out{start_};
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double len = cumulative_[k] - (k ? cumulative_[k - 1] : 0.0);
    std::size_t n = static_cast<std::size_t>(std::ceil(len / spacing));
    if (const auto* seg = std::get_if<Segment>(&pieces_[k])) {
      n = std::max<std::size_t>(n, 1);
      for (std::size_t j = 1; j <= n; ++j) out.push_back(seg->from + (seg->to - seg->from) * (double(j) / double(n)));
    } else {
      const Arc& a = std::get<Arc>(pieces_[k]);
      n = std::max<std::size_t>(n, 16);
      for (std::size_t j = 1; j <= n; ++j) out.push_back(arc_point(a, double(j) / double(n)));
    }
  }
  return out;
}

const char* to_string(Orientation o) { return o == Orientation::Counterclockwise ? "ccw" : "cw"; }

Path axis_path(double p, double x, const std::vector<double>& punctures, double eps) {
  Path path(Complex{p});
  std::vector<double> between;
  for (double v : punctures)
    if (v > std::min(p, x) && v < std::max(p, x)) between.push_back(v);
  for (double v : punctures)
    if (std::abs(v - x) < 0.999 * eps) throw PreconditionError("connecting path endpoint is within eps of a puncture");
  if (x > p) {
    std::sort(between.begin(), between.end());
    for (double v : between) {
      path.line_to(Complex{v - eps});
      path.arc_around(Complex{v}, kPi);  // through v - i*eps
    }
  } else {
    std::sort(between.begin(), between.end(), std::greater<>());
    for (double v : between) {
      path.line_to(Complex{v + eps});
      path.arc_around(Complex{v}, -kPi);
    }
  }
  path.line_to(Complex{x});
  return path;
}

Path over_the_top_path(double p, Complex x, const std::vector<double>& punctures, double eps, double height) {
  Path path(Complex{p});
  path.line_to(Complex{p, height});
  path.line_to(Complex{x.real(), height});
  // Punctures on the real axis the descent would pass too close to.
  std::vector<double> near;
  if (x.imag() < 0.0)
    for (double v : punctures)
      if (std::abs(v - x.real()) < eps) near.push_back(v);
  std::sort(near.begin(), near.end());
  for (double v : near) {
    const double delta = x.real() - v;
    const double h = std::sqrt(eps * eps - delta * delta);
    path.line_to(Complex{x.real(), h});
    const double a = std::acos(delta / eps);
    path.arc_around(Complex{v}, -2.0 * a);  // clockwise through v + eps
  }
  path.line_to(x);
  return path;
}

std::vector<LoopPath> build_loops(const std::vector<double>& punctures, double p, double eps, Orientation orientation) {
  std::vector<double> pts = punctures;
  pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (pts[k] - pts[k - 1] <= 2.0 * eps)
      throw PreconditionError("detour radius too large for the spacing of punctures and base point");

  std::vector<double> sorted = punctures;
  std::sort(sorted.begin(), sorted.end());
  const double turn = orientation == Orientation::Counterclockwise ? 2.0 * kPi : -2.0 * kPi;
  std::vector<LoopPath> loops;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double v = sorted[k];
    const double entry = v < p ? v + eps : v - eps;
    Path go = axis_path(p, entry, sorted, eps);
    Path loop = go;
    Path circle(Complex{entry});
    circle.arc_around(Complex{v}, turn);
    loop.append(circle);
    loop.append(go.reversed());
    loops.push_back(LoopPath{std::move(loop), Complex{p}, v, k, orientation, eps});
  }
  return loops;
}

double default_epsilon(const std::vector<double>& punctures, double p, const std::vector<Complex>& fiber) {
  std::vector<double> pts = punctures;
  pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < pts.size(); ++k) gap = std::min(gap, pts[k] - pts[k - 1]);
  for (Complex x : fiber)
    for (double v : punctures) gap = std::min(gap, std::abs(x - Complex{v}));
  if (!std::isfinite(gap)) gap = 1.0;
  return gap / 3.0;
}

std::vector<PunctureLetter> homotopy_word(const std::vector<Complex>& polyline, const std::vector<Complex>& punctures,
                                          double clearance, double ray_angle_degrees) {
  const Complex rot = std::polar(1.0, -(ray_angle_degrees - 90.0) * kPi / 180.0);
  std::vector<PunctureLetter> word;
  for (std::size_t s = 0; s + 1 < polyline.size(); ++s) {
    std::vector<std::tuple<double, std::size_t, int>> hits;
    for (std::size_t k = 0; k < punctures.size(); ++k) {
      const Complex v = punctures[k];
      const Complex z0 = polyline[s], z1 = polyline[s + 1];
      // distance from v to the segment
      const Complex dz = z1 - z0;
      double u = std::norm(dz) > 0 ? std::real((v - z0) * std::conj(dz)) / std::norm(dz) : 0.0;
      u = std::clamp(u, 0.0, 1.0);
      if (std::abs(z0 + dz * u - v) < clearance)
        throw NumericError("path passes within clearance of a puncture; ray crossing is ambiguous");
      const Complex w0 = (z0 - v) * rot, w1 = (z1 - v) * rot;
      const bool right0 = w0.real() >= 0.0, right1 = w1.real() >= 0.0;
      if (right0 == right1) continue;
      const double t = w0.real() / (w0.real() - w1.real());
      const double y = w0.imag() + t * (w1.imag() - w0.imag());
      if (y <= 0.0) continue;
      hits.emplace_back(t, k, right0 ? 1 : -1);
    }
    std::sort(hits.begin(), hits.end());
    for (auto [t, k, sign] : hits) {
      if (!word.empty() && word.back().puncture == k && word.back().exponent == -sign)
        word.pop_back();
      else
        word.push_back({k, sign});
    }
  }
  return word;
}

std::string word_to_string(const std::vector<PunctureLetter>& word) {
  if (word.empty()) return "id";
  std::ostringstream os;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) os << '*';
    os << 'g' << word[k].puncture + 1;
    if (word[k].exponent < 0) os << "^-1";
  }
  return os.str();
}

}  // namespace imgb
