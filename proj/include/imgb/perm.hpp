#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace imgb {

/// Index of a point in a permutation domain. Internally 0-based; every text
/// surface (cycle notation, JSON, CLI) shows points 1-based.
using Point = std::uint32_t;
using Cycle = std::vector<Point>;

/// A bijection of {0, ..., m-1}, stored as its image table.
///
/// Composition follows the right-operand-first convention: (p * q)(x) =
/// p(q(x)), so q is applied first.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree);
  /// Throws InputError unless `images` is a bijection of {0..m-1}.
  static Permutation from_images(std::vector<Point> images);
  /// Builds from 0-based cycles; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree, std::span<const Cycle> cycles);
  /// Parses 1-based cycle notation such as "(2 3)(4 5)"; "()" or "" is the
  /// identity. Commas between points are accepted.
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  Permutation pow(long long exponent) const;
  bool is_identity() const;

  /// Nontrivial cycles, each starting at its least point, sorted by that point.
  std::vector<Cycle> cycles() const;
  /// Cycle lengths including fixed points, sorted descending.
  std::vector<std::size_t> cycle_type() const;
  /// lcm of the cycle lengths.
  std::uint64_t order() const;
  bool is_full_cycle() const;

  /// 1-based cycle notation; the identity prints as "()".
  std::string to_string() const;

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

/// p ∘ q: q applied first. Throws PreconditionError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

/// Applies `perms` in order (first element acts first).
Permutation product_in_order(std::span<const Permutation> perms, std::size_t degree);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace imgb
