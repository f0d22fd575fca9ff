#pragma once

// Brute-force reference computations the library results are checked against.

#include <set>
#include <vector>

#include "imgb/perm.hpp"

namespace oracle {

// Every element of the group, by naive breadth-first multiplication.
inline std::set<imgb::Permutation> elements(const std::vector<imgb::Permutation>& gens) {
  const std::size_t m = gens.front().degree();
  std::set<imgb::Permutation> seen{imgb::Permutation::identity(m)};
  std::vector<imgb::Permutation> frontier{imgb::Permutation::identity(m)};
  while (!frontier.empty()) {
    std::vector<imgb::Permutation> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = imgb::compose(g, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

// Raw block definition against every group element.
inline bool is_block(const std::set<imgb::Permutation>& group, const std::vector<imgb::Point>& subset) {
  std::set<imgb::Point> s(subset.begin(), subset.end());
  for (const auto& g : group) {
    std::size_t inside = 0;
    for (auto x : subset) inside += s.count(g(x));
    if (inside != 0 && inside != subset.size()) return false;
  }
  return true;
}

// All blocks containing `point`, by trying every subset (m <= 16).
inline std::set<std::vector<imgb::Point>> blocks_at(const std::set<imgb::Permutation>& group, std::size_t m,
                                                    imgb::Point point) {
  std::set<std::vector<imgb::Point>> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (!(mask >> point & 1u)) continue;
    std::vector<imgb::Point> s;
    for (imgb::Point x = 0; x < m; ++x)
      if (mask >> x & 1u) s.push_back(x);
    if (is_block(group, s)) out.insert(s);
  }
  return out;
}

}  // namespace oracle
