#include "imgb/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x])
      throw InputError("image table is not a bijection");
    seen[x] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t degree, std::span<const Cycle> cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const Cycle& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      Point x = c[k];
      if (x >= degree) throw InputError("cycle point out of range");
      if (used[x]) throw InputError("cycles are not disjoint");
      used[x] = true;
      images[x] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<Cycle> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw InputError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    Cycle cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw InputError("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("unexpected character in cycle notation: " + std::string(text));
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (value == 0 || value > degree)
        throw InputError("point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
      cycle.push_back(static_cast<Point>(value - 1));
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<Point>(x);
  return Permutation(std::move(inv));
}

Permutation Permutation::pow(long long exponent) const {
  const std::size_t m = images_.size();
  std::vector<Point> out(m);
  std::vector<bool> done(m, false);
  // Exponentiate cycle by cycle.
  for (std::size_t start = 0; start < m; ++start) {
    if (done[start]) continue;
    Cycle c;
    for (Point x = static_cast<Point>(start); !done[x]; x = images_[x]) {
      done[x] = true;
      c.push_back(x);
    }
    const long long len = static_cast<long long>(c.size());
    long long shift = exponent % len;
    if (shift < 0) shift += len;
    for (long long k = 0; k < len; ++k) out[c[k]] = c[(k + shift) % len];
  }
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::vector<Cycle> Permutation::cycles() const {
  std::vector<Cycle> out;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    Cycle c;
    for (Point x = static_cast<Point>(start); !done[x]; x = images_[x]) {
      done[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> type;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(start); !done[x]; x = images_[x]) {
      done[x] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_type()) result = std::lcm(result, static_cast<std::uint64_t>(len));
  return result;
}

bool Permutation::is_full_cycle() const {
  if (images_.empty()) return false;
  std::size_t len = 0;
  Point x = 0;
  do {
    x = images_[x];
    ++len;
  } while (x != 0);
  return len == images_.size();
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const Cycle& c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k] + 1;
    os << ')';
  }
  return os.str();
}

Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw PreconditionError("compose: degree mismatch (" + std::to_string(p.degree()) + " vs " +
                            std::to_string(q.degree()) + ")");
  std::vector<Point> out(p.degree());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = p.images_[q.images_[x]];
  return Permutation(std::move(out));
}

Permutation product_in_order(std::span<const Permutation> perms, std::size_t degree) {
  Permutation acc = Permutation::identity(degree);
  for (const Permutation& g : perms) acc = compose(g, acc);
  return acc;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace imgb
