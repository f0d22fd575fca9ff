#include "imgb/construct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

double build_f_scale() { return std::sqrt(2.0 + std::sqrt(3.0)); }

Polynomial build_f() {
  const double s = build_f_scale();
  const double s2 = s * s;
  // Even auxiliary polynomial with derivative z (z^2 - 1)(z^2 - s^2).
  const Polynomial aux = Polynomial::from_real({0.0, 0.0, s2 / 2.0, 0.0, -(1.0 + s2) / 4.0, 0.0, 1.0 / 6.0});
  const double at_one = aux(1.0);
  const Polynomial inner = Polynomial::from_real({-s, s});
  return Complex{1.0 / at_one} * compose(aux, inner) + Complex{1.0};
}

Polynomial power_map(unsigned degree) {
  if (degree < 2) throw InputError("power map degree must be at least 2");
  return Polynomial::monomial(degree);
}

Polynomial portrait_polynomial(double lead, double constant, const std::vector<double>& critical_points) {
  std::vector<Complex> roots(critical_points.begin(), critical_points.end());
  return Complex{lead} * Polynomial::from_roots(roots).integral() + Complex{constant};
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, sep)) out.push_back(trim(part));
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw InputError("empty expression");
  if (s.size() > 3 && s[0] == 'P' && s[1] == '(' && s.back() == ')') {
    Expr e;
    e.kind = Kind::Apply;
    e.arg = std::make_shared<Expr>(parse(std::string_view(s).substr(2, s.size() - 3)));
    return e;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end && *end == '\0') {
    Expr e;
    e.kind = Kind::Number;
    e.number = v;
    return e;
  }
  if (is_identifier(s) && s != "P") {
    Expr e;
    e.kind = Kind::Slot;
    e.slot = s;
    return e;
  }
  throw InputError("cannot parse expression: " + s);
}

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Number: {
      std::ostringstream os;
      os << number;
      return os.str();
    }
    case Kind::Slot: return slot;
    case Kind::Apply: return "P(" + arg->to_string() + ")";
  }
  return "?";
}

int Expr::depth() const { return kind == Kind::Apply ? 1 + arg->depth() : 0; }

std::vector<std::string> PortraitSpec::free_slots() const {
  std::vector<std::string> out;
  for (const auto& s : slots)
    if (!s.name.empty()) out.push_back(s.name);
  return out;
}

PortraitSpec PortraitSpec::parse(std::string_view text) {
  PortraitSpec spec;
  std::istringstream is{std::string(text)};
  std::string raw;
  bool have_slots = false;
  while (std::getline(is, raw)) {
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("slots:", 0) == 0) {
      for (const auto& tok : split(line.substr(6), '<')) {
        Expr e = Expr::parse(tok);
        if (e.kind == Expr::Kind::Number)
          spec.slots.push_back({"", e.number});
        else if (e.kind == Expr::Kind::Slot)
          spec.slots.push_back({e.slot, 0.0});
        else
          throw InputError("slots must be names or numbers: " + tok);
      }
      have_slots = true;
    } else if (line.rfind("require:", 0) == 0) {
      std::vector<Expr> chain;
      for (const auto& tok : split(line.substr(8), '<')) chain.push_back(Expr::parse(tok));
      if (chain.size() < 2) throw InputError("requirement needs at least two terms: " + line);
      spec.requirements.push_back(std::move(chain));
    } else {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw InputError("expected an equation: " + line);
      spec.equations.push_back({Expr::parse(line.substr(0, eq)), Expr::parse(line.substr(eq + 1))});
    }
  }
  if (!have_slots || spec.slots.empty()) throw InputError("portrait spec needs a slots line");
  std::set<std::string> names;
  double last_fixed = -HUGE_VAL;
  for (const auto& s : spec.slots) {
    if (s.name.empty()) {
      if (!(s.value > last_fixed)) throw InputError("fixed slots must be strictly increasing");
      last_fixed = s.value;
    } else if (!names.insert(s.name).second) {
      throw InputError("duplicate slot name: " + s.name);
    }
  }
  auto check_names = [&](const Expr& e, auto&& self) -> void {
    if (e.kind == Expr::Kind::Slot && !names.contains(e.slot)) throw InputError("unknown slot: " + e.slot);
    if (e.kind == Expr::Kind::Apply) self(*e.arg, self);
  };
  for (const auto& eq : spec.equations) {
    check_names(eq.lhs, check_names);
    check_names(eq.rhs, check_names);
  }
  for (const auto& chain : spec.requirements)
    for (const auto& e : chain) check_names(e, check_names);
  if (spec.equations.size() != spec.unknown_count())
    throw InputError("portrait spec is not square: " + std::to_string(spec.equations.size()) + " equations for " +
                     std::to_string(spec.unknown_count()) + " unknowns");
  return spec;
}

std::string PortraitSpec::to_string() const {
  std::ostringstream os;
  os << "slots:";
  for (std::size_t k = 0; k < slots.size(); ++k) {
    os << (k ? " < " : " ");
    if (slots[k].name.empty())
      os << slots[k].value;
    else
      os << slots[k].name;
  }
  os << '\n';
  for (const auto& eq : equations) os << eq.lhs.to_string() << " = " << eq.rhs.to_string() << '\n';
  for (const auto& chain : requirements) {
    os << "require:";
    for (std::size_t k = 0; k < chain.size(); ++k) os << (k ? " < " : " ") << chain[k].to_string();
    os << '\n';
  }
  return os.str();
}

PortraitSpec g_spec() {
  return PortraitSpec::parse(
      "slots: c1 < c2 < 0 < c3 < 1\n"
      "P(c1) = c1\n"
      "P(c2) = 1\n"
      "P(c3) = 1\n"
      "P(1) = 0\n"
      "P(0) = 0\n");
}

PortraitSpec h_spec() {
  return PortraitSpec::parse(
      "slots: 0 < c1 < b < c2 < 2\n"
      "P(0) = 0\n"
      "P(2) = 0\n"
      "P(c1) = 2\n"
      "P(c2) = 2\n"
      "P(P(b)) = b\n"
      "require: 0 < P(b) < c1\n");
}

PortraitSpec conservative_cubic_spec() {
  return PortraitSpec::parse(
      "slots: 0 < 1\n"
      "P(0) = 0\n"
      "P(1) = 1\n");
}

// ---------------------------------------------------------------------------

namespace {

struct Model {
  const PortraitSpec& spec;
  std::vector<std::string> names;

  std::vector<double> critical_points(const Eigen::VectorXd& x) const {
    std::vector<double> out;
    std::size_t k = 2;
    for (const auto& s : spec.slots) out.push_back(s.name.empty() ? s.value : x[static_cast<Eigen::Index>(k++)]);
    return out;
  }

  double slot_value(const Eigen::VectorXd& x, const std::string& name) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return x[static_cast<Eigen::Index>(2 + k)];
    throw InputError("unknown slot: " + name);
  }

  double eval(const Expr& e, const Polynomial& p, const Eigen::VectorXd& x) const {
    switch (e.kind) {
      case Expr::Kind::Number: return e.number;
      case Expr::Kind::Slot: return slot_value(x, e.slot);
      case Expr::Kind::Apply: return p(eval(*e.arg, p, x));
    }
    return 0.0;
  }

  Polynomial poly(const Eigen::VectorXd& x) const { return portrait_polynomial(x[0], x[1], critical_points(x)); }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const Polynomial p = poly(x);
    Eigen::VectorXd r(static_cast<Eigen::Index>(spec.equations.size()));
    for (std::size_t k = 0; k < spec.equations.size(); ++k)
      r[static_cast<Eigen::Index>(k)] = eval(spec.equations[k].lhs, p, x) - eval(spec.equations[k].rhs, p, x);
    return r;
  }

  bool ordered(const Eigen::VectorXd& x) const {
    const auto c = critical_points(x);
    for (std::size_t k = 1; k < c.size(); ++k)
      if (!(c[k] - c[k - 1] > 1e-9)) return false;
    return true;
  }

  bool requirements_hold(const Eigen::VectorXd& x) const {
    const Polynomial p = poly(x);
    for (const auto& chain : spec.requirements)
      for (std::size_t k = 1; k < chain.size(); ++k)
        if (!(eval(chain[k - 1], p, x) < eval(chain[k], p, x))) return false;
    return true;
  }
};

// Least-squares lead and constant from equations in which P is applied at
// most once per side (those are affine in the two).
void initial_lead_constant(const Model& m, Eigen::VectorXd& x) {
  std::vector<std::size_t> simple;
  for (std::size_t k = 0; k < m.spec.equations.size(); ++k)
    if (m.spec.equations[k].lhs.depth() <= 1 && m.spec.equations[k].rhs.depth() <= 1) simple.push_back(k);
  if (simple.size() < 2) {
    x[0] = 1.0;
    x[1] = 0.0;
    return;
  }
  Eigen::VectorXd x00 = x, x10 = x, x01 = x;
  x00[0] = 0.0, x00[1] = 0.0;
  x10[0] = 1.0, x10[1] = 0.0;
  x01[0] = 0.0, x01[1] = 1.0;
  const Eigen::VectorXd r00 = m.residual(x00), r10 = m.residual(x10), r01 = m.residual(x01);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(simple.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(simple.size()));
  for (std::size_t i = 0; i < simple.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(simple[i]);
    const auto row = static_cast<Eigen::Index>(i);
    a(row, 0) = r10[k] - r00[k];
    a(row, 1) = r01[k] - r00[k];
    b[row] = -r00[k];
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(b);
  x[0] = sol[0];
  x[1] = sol[1];
}

bool newton(const Model& m, Eigen::VectorXd& x, int max_iter, double tol) {
  Eigen::VectorXd r = m.residual(x);
  const Eigen::Index n = x.size();
  for (int it = 0; it < max_iter; ++it) {
    const double norm = r.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(norm)) return false;
    Eigen::MatrixXd j(r.size(), n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[c]));
      Eigen::VectorXd xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      j.col(c) = (m.residual(xp) - m.residual(xm)) / (2.0 * h);
    }
    const Eigen::VectorXd dx = j.colPivHouseholderQr().solve(-r);
    if (!dx.allFinite()) return false;
    double t = 1.0;
    Eigen::VectorXd xn = x + dx;
    Eigen::VectorXd rn = m.residual(xn);
    while (!(rn.lpNorm<Eigen::Infinity>() < norm) && t > 1e-4) {
      t *= 0.5;
      xn = x + t * dx;
      rn = m.residual(xn);
    }
    if (!(rn.lpNorm<Eigen::Infinity>() < norm)) return norm < tol;
    const double step = (xn - x).lpNorm<Eigen::Infinity>();
    x = xn;
    r = rn;
    if (r.lpNorm<Eigen::Infinity>() < 1e-3 * tol && step < 1e-14 * std::max(1.0, x.lpNorm<Eigen::Infinity>()))
      return true;
  }
  return r.lpNorm<Eigen::Infinity>() < tol;
}

}  // namespace

PortraitSolution solve_portrait(const PortraitSpec& spec, const SolveOptions& options) {
  Model m{spec, spec.free_slots()};
  if (spec.equations.size() != spec.unknown_count()) throw InputError("portrait spec is not square");

  // Grid range for each free slot: between its nearest fixed neighbours,
  // extended past the outermost fixed slots.
  double lo_fixed = HUGE_VAL, hi_fixed = -HUGE_VAL;
  for (const auto& s : spec.slots)
    if (s.name.empty()) {
      lo_fixed = std::min(lo_fixed, s.value);
      hi_fixed = std::max(hi_fixed, s.value);
    }
  if (lo_fixed > hi_fixed) lo_fixed = -1.0, hi_fixed = 1.0;
  const double span = std::max(1.0, hi_fixed - lo_fixed);
  std::vector<std::pair<double, double>> ranges;
  for (std::size_t k = 0; k < spec.slots.size(); ++k) {
    if (!spec.slots[k].name.empty()) {
      double lo = lo_fixed - 2.0 * span, hi = hi_fixed + 2.0 * span;
      for (std::size_t j = k; j-- > 0;)
        if (spec.slots[j].name.empty()) {
          lo = spec.slots[j].value;
          break;
        }
      for (std::size_t j = k + 1; j < spec.slots.size(); ++j)
        if (spec.slots[j].name.empty()) {
          hi = spec.slots[j].value;
          break;
        }
      ranges.emplace_back(lo, hi);
    }
  }

  const std::size_t free = ranges.size();
  const unsigned g = std::max(1u, options.grid_points);
  std::vector<Eigen::VectorXd> found;
  std::size_t rejected = 0;
  std::vector<unsigned> idx(free, 0);
  const Eigen::Index n = static_cast<Eigen::Index>(2 + free);
  for (bool more = true; more;) {
    Eigen::VectorXd x(n);
    for (std::size_t k = 0; k < free; ++k)
      x[static_cast<Eigen::Index>(2 + k)] =
          ranges[k].first + (ranges[k].second - ranges[k].first) * (idx[k] + 0.5) / g;
    if (m.ordered(x)) {
      initial_lead_constant(m, x);
      if (newton(m, x, options.max_newton, options.residual_tolerance)) {
        const bool admissible = m.ordered(x) && m.requirements_hold(x);
        bool duplicate = false;
        for (const auto& y : found)
          if ((y - x).lpNorm<Eigen::Infinity>() < 1e-6 * std::max(1.0, y.lpNorm<Eigen::Infinity>())) duplicate = true;
        if (!admissible) {
          ++rejected;
        } else if (!duplicate) {
          found.push_back(x);
        }
      }
    }
    std::size_t pos = 0;
    while (pos < free && ++idx[pos] == g) idx[pos++] = 0;
    more = pos < free;
    if (free == 0) more = false;
  }
  if (found.empty()) throw NumericError("portrait solve found no admissible solution");
  std::sort(found.begin(), found.end(), [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index k = 2; k < a.size(); ++k)
      if (a[k] != b[k]) return a[k] < b[k];
    return a[0] < b[0];
  });

  PortraitSolution sol;
  const Eigen::VectorXd& x = found.front();
  sol.lead = x[0];
  sol.constant = x[1];
  for (std::size_t k = 0; k < m.names.size(); ++k) sol.slots[m.names[k]] = x[static_cast<Eigen::Index>(2 + k)];
  sol.critical_points = m.critical_points(x);
  sol.poly = m.poly(x);
  sol.max_residual = m.residual(x).lpNorm<Eigen::Infinity>();
  sol.solutions_found = found.size();
  sol.rejected_solutions = rejected;
  return sol;
}

}  // namespace imgb
