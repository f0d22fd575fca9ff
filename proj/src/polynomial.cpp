#include "imgb/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

Polynomial::Polynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) < 1e-300) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::from_real(const std::vector<double>& ascending) {
  return Polynomial(std::vector<Complex>(ascending.begin(), ascending.end()));
}

Polynomial Polynomial::monomial(unsigned degree, Complex coefficient) {
  std::vector<Complex> c(degree + 1, 0.0);
  c[degree] = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex lead) {
  Polynomial p({lead});
  for (Complex r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

bool Polynomial::is_real(double tol) const {
  const double scale = tol * std::max(1.0, norm());
  for (Complex c : coeffs_)
    if (std::abs(c.imag()) > scale) return false;
  return true;
}

double Polynomial::norm() const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> Polynomial::eval_with_derivative(Complex z) const {
  Complex p = 0.0, dp = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::integral() const {
  std::vector<Complex> d(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) d[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Complex{-1.0} * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& a) {
  std::vector<Complex> c = a.coeffs_;
  for (Complex& x : c) x *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(Complex c) const {
  Polynomial p = *this;
  p.coeffs_[0] -= c;
  return p;
}

Polynomial Polynomial::operator+(Complex c) const {
  Polynomial p = *this;
  p.coeffs_[0] += c;
  return p;
}

Polynomial compose(const Polynomial& p, const Polynomial& q) {
  Polynomial acc({p.coeffs_.back()});
  for (std::size_t k = p.coeffs_.size() - 1; k-- > 0;) acc = acc * q + p.coeffs_[k];
  return acc;
}

Polynomial Polynomial::parse_coefficients(std::string_view text) {
  std::vector<Complex> c;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("bad coefficient on line " + std::to_string(lineno));
    }
    if (!(ls >> im)) im = 0.0;
    std::string rest;
    if (ls >> rest) throw InputError("trailing text on coefficient line " + std::to_string(lineno));
    if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("non-finite coefficient");
    c.emplace_back(re, im);
  }
  if (c.empty()) throw InputError("coefficient file is empty");
  Polynomial p(std::move(c));
  if (p.degree() < 1) throw InputError("polynomial must have degree at least 1");
  return p;
}

std::string Polynomial::to_coefficient_text() const {
  std::ostringstream os;
  os.precision(17);
  for (Complex c : coeffs_) {
    os << c.real();
    if (c.imag() != 0.0) os << ' ' << c.imag();
    os << '\n';
  }
  return os.str();
}

std::string Polynomial::to_string() const {
  // Display only: terms below 1e-13 of the norm are rounding noise.
  const double floor = 1e-13 * norm();
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    Complex c = coeffs_[k];
    if (std::abs(c) <= floor && !(first && k == 0)) continue;
    const bool real = c.imag() == 0.0;
    if (real && c.real() < 0.0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (real)
      os << c.real();
    else
      os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k >= 1) os << "*z";
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

IteratedMap::IteratedMap(const Polynomial& poly, unsigned count)
    : poly_(poly), deriv_(poly.derivative()), count_(count) {}

Complex IteratedMap::operator()(Complex z) const {
  for (unsigned k = 0; k < count_; ++k) z = poly_(z);
  return z;
}

std::pair<Complex, Complex> IteratedMap::eval_with_derivative(Complex z) const {
  Complex d = 1.0;
  for (unsigned k = 0; k < count_; ++k) {
    auto [v, dv] = poly_.eval_with_derivative(z);
    d *= dv;
    z = v;
  }
  return {z, d};
}

// ---------------------------------------------------------------------------

double point_scale(const std::vector<Complex>& points) {
  double s = 1.0;
  for (Complex z : points) s = std::max(s, std::abs(z));
  return s;
}

void sort_points(std::vector<Complex>& points) {
  std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

namespace {

// Bound on the modulus of the residual from rounding in Horner's scheme.
double horner_error_bound(const std::vector<Complex>& c, Complex z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return 8.0 * std::numeric_limits<double>::epsilon() * acc * static_cast<double>(c.size());
}

}  // namespace

std::vector<Complex> all_roots(const Polynomial& poly, const RootOptions& options) {
  const unsigned n = poly.degree();
  if (n < 1) throw PreconditionError("all_roots: degree must be at least 1");
  const auto& a = poly.coefficients();
  if (n == 1) return {-a[0] / a[1]};

  // Initial points on a circle around the centroid of the roots.
  const Complex center = -a[n - 1] / (static_cast<double>(n) * a[n]);
  const Polynomial shifted = compose(poly, Polynomial({center, 1.0}));
  const auto& b = shifted.coefficients();
  double radius = 0.0;
  for (unsigned k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(b[k] / b[n]), 1.0 / static_cast<double>(n - k)));
  if (radius == 0.0) radius = 1.0;
  std::vector<Complex> z(n);
  for (unsigned k = 0; k < n; ++k)
    z[k] = center + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.4);

  std::vector<bool> done(n, false);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    bool all_done = true;
    for (unsigned k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [p, dp] = poly.eval_with_derivative(z[k]);
      if (std::abs(p) <= horner_error_bound(a, z[k])) {
        done[k] = true;
        continue;
      }
      Complex s = 0.0;
      for (unsigned j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const Complex ratio = p / dp;
      const Complex w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        z[k] += radius * 1e-6 * std::polar(1.0, 1.0 + k);
        all_done = false;
        continue;
      }
      z[k] -= w;
      if (std::abs(w) <= options.tolerance * std::max(1.0, std::abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  if (iter == options.max_iterations) {
    // Accept only if every residual is still small in the backward sense.
    std::ostringstream os;
    bool bad = false;
    for (unsigned k = 0; k < n; ++k) {
      const double res = std::abs(poly(z[k]));
      if (res > 1e6 * horner_error_bound(a, z[k])) bad = true;
      os << " |p(z" << k << ")|=" << res;
    }
    if (bad) throw NumericError("root finding did not converge;" + os.str());
  }

  // Newton polish, guarded so a root never jumps toward another.
  for (unsigned k = 0; k < n; ++k) {
    double nearest = std::numeric_limits<double>::infinity();
    for (unsigned j = 0; j < n; ++j)
      if (j != k) nearest = std::min(nearest, std::abs(z[k] - z[j]));
    for (int it = 0; it < 4; ++it) {
      auto [p, dp] = poly.eval_with_derivative(z[k]);
      if (dp == Complex{0.0}) break;
      const Complex step = p / dp;
      if (std::abs(step) > 0.25 * nearest) break;
      const Complex cand = z[k] - step;
      if (std::abs(poly(cand)) >= std::abs(p)) break;
      z[k] = cand;
    }
  }
  sort_points(z);
  return z;
}

std::vector<RootCluster> root_clusters(const Polynomial& poly, const RootOptions& options) {
  const std::vector<Complex> z = all_roots(poly, options);
  const std::size_t n = z.size();
  const double scale = point_scale(z);

  // Single-linkage groups at a coarse threshold.
  std::vector<std::size_t> group(n);
  for (std::size_t k = 0; k < n; ++k) group[k] = k;
  auto find = [&](std::size_t x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < 1e-3 * scale) group[find(j)] = find(i);

  std::vector<RootCluster> out;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < n; ++j)
      if (!used[j] && find(j) == find(i)) members.push_back(j);
    double diameter = 0.0;
    for (std::size_t a : members)
      for (std::size_t b : members) diameter = std::max(diameter, std::abs(z[a] - z[b]));
    const double k = static_cast<double>(members.size());
    const double limit =
        std::max(options.cluster_tolerance, 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / k)) * scale;
    if (members.size() > 1 && diameter < limit) {
      Complex c = 0.0;
      for (std::size_t a : members) c += z[a];
      out.push_back({c / k, static_cast<unsigned>(members.size())});
      for (std::size_t a : members) used[a] = true;
    } else {
      out.push_back({z[i], 1});
      used[i] = true;
    }
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

std::vector<Complex> preimages(const Polynomial& poly, Complex value, const RootOptions& options) {
  return all_roots(poly - value, options);
}

namespace {

void merge_into(std::vector<Complex>& set, Complex z, double tol, bool& added) {
  for (Complex w : set)
    if (std::abs(w - z) <= tol) {
      added = false;
      return;
    }
  set.push_back(z);
  added = true;
}

}  // namespace

CriticalData critical_data(const Polynomial& poly, unsigned depth, double merge_tolerance,
                           const RootOptions& options) {
  CriticalData cd;
  cd.points = root_clusters(poly.derivative(), options);
  std::vector<Complex> pts;
  for (const auto& c : cd.points) pts.push_back(c.center);
  std::vector<Complex> vals;
  for (Complex c : pts) vals.push_back(poly(c));
  const double tol = merge_tolerance * std::max(point_scale(pts), point_scale(vals));
  for (Complex v : vals) {
    bool added = false;
    merge_into(cd.values, v, tol, added);
  }
  sort_points(cd.values);

  cd.postcritical = cd.values;
  std::vector<Complex> frontier = cd.values;
  cd.finite = false;
  for (unsigned k = 0; k < depth; ++k) {
    std::vector<Complex> next;
    for (Complex z : frontier) {
      bool added = false;
      merge_into(cd.postcritical, poly(z), tol * std::max(1.0, std::abs(z)), added);
      if (added) next.push_back(cd.postcritical.back());
    }
    if (next.empty()) {
      cd.finite = true;
      break;
    }
    frontier = std::move(next);
  }
  sort_points(cd.postcritical);
  return cd;
}

std::vector<Complex> iterate_critical_values(const Polynomial& poly, unsigned levels, double merge_tolerance,
                                             const RootOptions& options) {
  const CriticalData cd = critical_data(poly, 0, merge_tolerance, options);
  const double tol = merge_tolerance * point_scale(cd.values);
  std::vector<Complex> out = cd.values;
  std::vector<Complex> frontier = cd.values;
  for (unsigned k = 1; k < levels; ++k) {
    std::vector<Complex> next;
    for (Complex z : frontier) {
      bool added = false;
      merge_into(out, poly(z), tol * std::max(1.0, std::abs(z)), added);
      if (added) next.push_back(out.back());
    }
    frontier = std::move(next);
  }
  sort_points(out);
  return out;
}

PreimageTree preimage_tree(const Polynomial& poly, Complex base, unsigned height, double separation,
                           const RootOptions& options) {
  PreimageTree t;
  t.base = base;
  t.degree = poly.degree();
  t.height = height;
  t.levels.push_back({base});
  t.parents.push_back({});
  for (unsigned k = 1; k <= height; ++k) {
    std::vector<Complex> level;
    std::vector<std::size_t> parents;
    for (std::size_t i = 0; i < t.levels[k - 1].size(); ++i) {
      for (Complex z : preimages(poly, t.levels[k - 1][i], options)) {
        level.push_back(z);
        parents.push_back(i);
      }
    }
    const double scale = point_scale(level);
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t j = i + 1; j < level.size(); ++j)
        if (std::abs(level[i] - level[j]) < separation * scale)
          throw NumericError("preimage points collide at level " + std::to_string(k) +
                             "; choose a different base point");
    t.levels.push_back(std::move(level));
    t.parents.push_back(std::move(parents));
  }
  return t;
}

}  // namespace imgb
