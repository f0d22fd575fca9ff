#include "imgb/group.hpp"

#include <deque>
#include <unordered_set>

#include "imgb/errors.hpp"

namespace imgb {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw PreconditionError("generator degree mismatch");
}

std::vector<Point> PermGroup::orbit(Point x) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : generators_) {
      Point y = g(out[k]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree_, false);
  for (Point x = 0; x < degree_; ++x) {
    if (seen[x]) continue;
    auto o = orbit(x);
    for (Point y : o) seen[y] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool PermGroup::is_transitive() const { return degree_ > 0 && orbit(0).size() == degree_; }

bool PermGroup::is_doubly_transitive() const {
  if (degree_ < 2) return is_transitive();
  const std::size_t m = degree_;
  std::vector<bool> seen(m * m, false);
  std::vector<std::size_t> queue{0 * m + 1};
  seen[1] = true;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    Point a = static_cast<Point>(queue[k] / m), b = static_cast<Point>(queue[k] % m);
    for (const auto& g : generators_) {
      std::size_t key = g(a) * m + g(b);
      if (!seen[key]) {
        seen[key] = true;
        queue.push_back(key);
      }
    }
  }
  return queue.size() == m * (m - 1);
}

std::vector<Permutation> PermGroup::closure(std::size_t cap) const {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements{Permutation::identity(degree_)};
  seen.insert(elements.front());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : generators_) {
      Permutation h = compose(g, elements[k]);
      if (seen.insert(h).second) {
        if (elements.size() >= cap)
          throw CapExceeded("group closure exceeded cap of " + std::to_string(cap) + " elements");
        elements.push_back(std::move(h));
      }
    }
  }
  return elements;
}

BigInt PermGroup::order_by_closure(std::size_t cap) const { return BigInt(closure(cap).size()); }

BigInt PermGroup::order_by_stabilizer_chain() const {
  return StabilizerChain(degree_, generators_).order();
}

BigInt PermGroup::order(std::size_t closure_cap) const {
  try {
    return order_by_closure(closure_cap);
  } catch (const CapExceeded&) {
    return order_by_stabilizer_chain();
  }
}

bool PermGroup::contains(const Permutation& g) const {
  return StabilizerChain(degree_, generators_).contains(g);
}

// ---------------------------------------------------------------------------

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Permutation>& generators)
    : degree_(degree) {
  for (const auto& g : generators) {
    if (g.degree() != degree) throw PreconditionError("generator degree mismatch");
    if (!g.is_identity()) strong_.push_back(g);
  }
  run();
}

bool StabilizerChain::fixes_base_prefix(const Permutation& g, std::size_t count) const {
  for (std::size_t i = 0; i < count; ++i)
    if (g(levels_[i].base_point) != levels_[i].base_point) return false;
  return true;
}

void StabilizerChain::append_base_point_for(const Permutation& g) {
  for (Point x = 0; x < degree_; ++x) {
    if (g(x) != x) {
      levels_.push_back(Level{x, {}, {}, {}});
      return;
    }
  }
}

void StabilizerChain::rebuild_level(std::size_t i) {
  Level& lv = levels_[i];
  lv.gens.clear();
  for (std::size_t s = 0; s < strong_.size(); ++s)
    if (fixes_base_prefix(strong_[s], i)) lv.gens.push_back(s);
  lv.transversal.assign(degree_, std::nullopt);
  lv.transversal[lv.base_point] = Permutation::identity(degree_);
  lv.orbit = {lv.base_point};
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point beta = lv.orbit[k];
    for (std::size_t s : lv.gens) {
      Point img = strong_[s](beta);
      if (!lv.transversal[img]) {
        lv.transversal[img] = compose(strong_[s], *lv.transversal[beta]);
        lv.orbit.push_back(img);
      }
    }
  }
}

// Sifts g through levels >= `level`; returns the level where sifting stopped
// (levels_.size() if it passed every level). g is replaced by the residue.
std::size_t StabilizerChain::strip_from(Permutation& g, std::size_t level) const {
  for (std::size_t l = level; l < levels_.size(); ++l) {
    Point beta = g(levels_[l].base_point);
    const auto& u = levels_[l].transversal[beta];
    if (!u) return l;
    g = compose(u->inverse(), g);
  }
  return levels_.size();
}

void StabilizerChain::run() {
  for (const auto& g : strong_)
    if (fixes_base_prefix(g, levels_.size())) append_base_point_for(g);
  for (std::size_t i = 0; i < levels_.size(); ++i) rebuild_level(i);

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool extended = false;
    const std::size_t li = static_cast<std::size_t>(i);
    // Copies: the level is rebuilt when a new strong generator appears.
    const std::vector<Point> orbit = levels_[li].orbit;
    const std::vector<std::size_t> gens = levels_[li].gens;
    for (Point beta : orbit) {
      for (std::size_t s : gens) {
        const Permutation& u_beta = *levels_[li].transversal[beta];
        Point img = strong_[s](beta);
        const Permutation& u_img = *levels_[li].transversal[img];
        Permutation h = compose(u_img.inverse(), compose(strong_[s], u_beta));
        std::size_t j = strip_from(h, li + 1);
        if (j < levels_.size() || !h.is_identity()) {
          strong_.push_back(h);
          if (j == levels_.size()) append_base_point_for(h);
          for (std::size_t l = li + 1; l <= j && l < levels_.size(); ++l) rebuild_level(l);
          i = static_cast<std::ptrdiff_t>(j);
          if (j >= levels_.size()) i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
          extended = true;
          break;
        }
      }
      if (extended) break;
    }
    if (!extended) --i;
  }
}

BigInt StabilizerChain::order() const {
  BigInt result = 1;
  for (const auto& lv : levels_) result *= lv.orbit.size();
  return result;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  Permutation h = g;
  return strip_from(h, 0) == levels_.size() && h.is_identity();
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  for (const auto& lv : levels_) out.push_back(lv.base_point);
  return out;
}

}  // namespace imgb
