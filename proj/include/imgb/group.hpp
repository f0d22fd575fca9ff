#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <vector>

#include "imgb/perm.hpp"

namespace imgb {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// A finitely generated permutation group. Values are immutable; nothing is
/// cached, so instances are safe to share between threads.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  std::vector<Point> orbit(Point x) const;
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;
  /// Orbit of the ordered pair (0, 1) has size m(m-1).
  bool is_doubly_transitive() const;

  /// All elements by breadth-first multiplication. Throws CapExceeded once
  /// more than `cap` elements have been produced.
  std::vector<Permutation> closure(std::size_t cap = kDefaultClosureCap) const;
  BigInt order_by_closure(std::size_t cap = kDefaultClosureCap) const;
  BigInt order_by_stabilizer_chain() const;
  /// Closure when it fits under `cap`, stabilizer chain otherwise.
  BigInt order(std::size_t closure_cap = kDefaultClosureCap) const;
  bool contains(const Permutation& g) const;

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
};

/// Base and strong generating set built by deterministic Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Permutation>& generators);

  BigInt order() const;
  bool contains(const Permutation& g) const;
  std::vector<Point> base() const;
  std::size_t strong_generator_count() const { return strong_.size(); }

 private:
  struct Level {
    Point base_point;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> transversal;  // u with u(base_point) = key
  };

  void rebuild_level(std::size_t i);
  std::size_t strip_from(Permutation& g, std::size_t level) const;
  bool fixes_base_prefix(const Permutation& g, std::size_t count) const;
  void append_base_point_for(const Permutation& g);
  void run();

  std::size_t degree_;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

}  // namespace imgb
