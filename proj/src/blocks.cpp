#include "imgb/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "imgb/automaton.hpp"
#include "imgb/errors.hpp"

namespace imgb {

namespace {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point{0}); }
  Point find(Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

PointSet normalized(std::span<const Point> pts) {
  PointSet out(pts.begin(), pts.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool block_order(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

BlockReport make_block_report(const TreeShape& shape, PointSet points) {
  std::sort(points.begin(), points.end());
  std::vector<std::size_t> idx(points.begin(), points.end());
  return BlockReport{std::move(points), classify_block_shape(shape, idx)};
}

PointSet minimal_block(const PermGroup& group, std::span<const Point> seed) {
  if (seed.empty()) throw PreconditionError("minimal_block: empty seed");
  if (!group.is_transitive()) throw PreconditionError("minimal_block: group is not transitive");
  const std::size_t m = group.degree();
  for (Point x : seed)
    if (x >= m) throw PreconditionError("minimal_block: seed point out of range");

  UnionFind uf(m);
  std::vector<std::pair<Point, Point>> queue;
  for (std::size_t k = 1; k < seed.size(); ++k)
    if (uf.unite(seed[0], seed[k])) queue.emplace_back(seed[0], seed[k]);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [a, b] = queue[k];
    for (const auto& g : group.generators()) {
      Point ga = g(a), gb = g(b);
      if (uf.unite(ga, gb)) queue.emplace_back(ga, gb);
    }
  }
  const Point root = uf.find(seed[0]);
  PointSet out;
  for (Point x = 0; x < m; ++x)
    if (uf.find(x) == root) out.push_back(x);
  return out;
}

bool is_block(const PermGroup& group, std::span<const Point> subset) {
  const std::size_t m = group.degree();
  PointSet start = normalized(subset);
  if (start.empty()) return false;
  // owner[x] = index of the image containing x
  std::vector<std::ptrdiff_t> owner(m, -1);
  std::vector<PointSet> images{start};
  for (Point x : start) owner[x] = 0;
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (const auto& g : group.generators()) {
      PointSet img;
      img.reserve(images[k].size());
      for (Point x : images[k]) img.push_back(g(x));
      std::sort(img.begin(), img.end());
      const std::ptrdiff_t o = owner[img.front()];
      if (o >= 0) {
        if (images[static_cast<std::size_t>(o)] != img) return false;
        continue;
      }
      for (Point x : img)
        if (owner[x] >= 0) return false;
      const auto id = static_cast<std::ptrdiff_t>(images.size());
      for (Point x : img) owner[x] = id;
      images.push_back(std::move(img));
    }
  }
  return true;
}

std::vector<PointSet> block_lattice_at(const PermGroup& group, Point point, std::size_t cap) {
  const std::size_t m = group.degree();
  if (m > cap) throw CapExceeded("block lattice: degree " + std::to_string(m) + " exceeds cap " + std::to_string(cap));
  if (!group.is_transitive()) throw PreconditionError("block_lattice_at: group is not transitive");

  std::set<PointSet> found;
  found.insert(PointSet{point});
  for (Point k = 0; k < m; ++k) {
    if (k == point) continue;
    const Point seed[2] = {point, k};
    found.insert(minimal_block(group, seed));
  }

  // Join closure.
  std::vector<PointSet> all(found.begin(), found.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = all.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        PointSet u;
        std::set_union(all[i].begin(), all[i].end(), all[j].begin(), all[j].end(), std::back_inserter(u));
        PointSet joined = minimal_block(group, u);
        if (found.insert(joined).second) {
          all.push_back(std::move(joined));
          grew = true;
        }
      }
    }
  }
  std::sort(all.begin(), all.end(), block_order);
  return all;
}

bool is_primitive(const PermGroup& group) {
  if (!group.is_transitive()) throw PreconditionError("is_primitive: group is not transitive");
  const std::size_t m = group.degree();
  if (m <= 2) return true;
  for (Point k = 1; k < m; ++k) {
    const Point seed[2] = {0, k};
    if (minimal_block(group, seed).size() != m) return false;
  }
  return true;
}

std::optional<FullCycleWitness> find_full_cycle(const PermGroup& group, std::size_t max_length) {
  const auto& gens = group.generators();
  if (gens.empty()) return std::nullopt;
  struct Node {
    Permutation element;
    std::vector<std::size_t> word;
  };
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Node> frontier{{Permutation::identity(group.degree()), {}}};
  seen.insert(frontier.front().element);
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Permutation e = compose(gens[g], node.element);
        if (!seen.insert(e).second) continue;
        std::vector<std::size_t> w = node.word;
        w.push_back(g);
        if (e.is_full_cycle()) return FullCycleWitness{std::move(w), std::move(e)};
        next.push_back(Node{std::move(e), std::move(w)});
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

bool is_prime_power(unsigned n) {
  if (n < 2) return false;
  unsigned p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

namespace {

FullCycleWitness certify(const TreeShape& shape, const PermGroup& group, std::size_t search_length) {
  if (group.degree() != shape.leaves()) throw PreconditionError("group degree must be d^n");
  for (const auto& g : group.generators())
    if (!preserves_tree(g, shape)) throw HypothesisError("a generator does not preserve the tree");
  auto w = find_full_cycle(group, search_length);
  if (!w) throw HypothesisError("no full cycle found among products of generators");
  return *w;
}

}  // namespace

Main1Result verify_main1(const TreeShape& shape, const PermGroup& group, std::size_t search_length) {
  Main1Result r;
  r.witness = certify(shape, group, search_length);
  r.prime_power = is_prime_power(shape.degree);
  r.prime = is_prime(shape.degree);
  for (const PointSet& b : block_lattice_at(group, 0, std::max<std::size_t>(kDefaultLatticeCap, group.degree()))) {
    ++r.blocks_checked;
    BlockReport rep = make_block_report(shape, b);
    if (rep.shape.kind != BlockClass::SingleBranch) r.all_branches = false;
    if (!rep.shape.basic()) {
      if (r.all_basic) r.counterexample = rep;
      r.all_basic = false;
    } else if (r.prime && rep.shape.kind != BlockClass::SingleBranch && !r.counterexample) {
      r.counterexample = rep;
    }
  }
  r.passed = r.all_basic && (!r.prime || r.all_branches);
  return r;
}

Main3Result verify_main3(const TreeShape& shape, const PermGroup& group, std::size_t search_length) {
  Main3Result r;
  r.witness = certify(shape, group, search_length);
  std::vector<Permutation> level1;
  for (const auto& g : group.generators()) level1.push_back(truncate_to_level(g, shape, 1));
  PermGroup top(shape.degree, level1);
  if (!top.is_transitive() || !is_primitive(top))
    throw HypothesisError("level-1 restriction is not primitive");

  const std::size_t m = group.degree();
  r.passed = true;
  for (Point x = 0; x < m && r.passed; ++x) {
    for (Point y = x + 1; y < m; ++y) {
      if (shape.major_branch(x) == shape.major_branch(y)) continue;
      ++r.pairs_checked;
      const Point seed[2] = {x, y};
      PointSet b = minimal_block(group, seed);
      if (b.size() != m) {
        r.passed = false;
        r.counterexample = {x, y};
        r.counterexample_block_size = b.size();
        break;
      }
    }
  }
  return r;
}

PowerMapResult power_map_blocks(unsigned p, unsigned q, unsigned n) {
  if (!is_prime(p) || !is_prime(q) || p >= q) throw PreconditionError("power_map_blocks needs primes p < q");
  if (n < 1) throw PreconditionError("power_map_blocks needs n >= 1");
  TreeShape shape(p * q, n);
  const Permutation sigma = adding_machine(p * q).unroll(std::size_t{1}, n);
  long long qn = 1;
  for (unsigned k = 0; k < n; ++k) qn *= q;
  const Permutation power = sigma.pow(qn);
  PointSet orbit{0};
  for (Point x = power(0); x != 0; x = power(x)) orbit.push_back(x);
  PowerMapResult r{shape, make_block_report(shape, orbit), false};
  r.is_block = is_block(PermGroup(shape.leaves(), {sigma}), r.block.points);
  return r;
}

FatouResult fatou_oracle(const TreeShape& shape, const PermGroup& group, std::span<const Point> seed) {
  if (group.degree() != shape.leaves()) throw PreconditionError("group degree must be d^n");
  std::set<std::size_t> branches;
  for (Point x : seed) branches.insert(shape.major_branch(x));
  if (branches.size() < 2) throw PreconditionError("seed must meet at least two major branches");
  FatouResult r;
  r.block = minimal_block(group, seed);
  r.block_size = r.block.size();
  r.threshold = shape.level_size(shape.height - 1);
  r.exceeds = r.block_size > r.threshold;
  return r;
}

}  // namespace imgb
