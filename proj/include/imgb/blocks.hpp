#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "imgb/group.hpp"
#include "imgb/tree.hpp"

namespace imgb {

using PointSet = std::vector<Point>;

/// A block together with its shape relative to a tree.
struct BlockReport {
  PointSet points;  // sorted
  BlockShape shape;
};

BlockReport make_block_report(const TreeShape& shape, PointSet points);

/// Smallest block of a transitive group containing `seed`, by union-find
/// refinement. Throws PreconditionError for an intransitive group or an
/// empty seed.
PointSet minimal_block(const PermGroup& group, std::span<const Point> seed);

/// Raw block test: the images of `subset` under the group are pairwise equal
/// or disjoint.
bool is_block(const PermGroup& group, std::span<const Point> subset);

inline constexpr std::size_t kDefaultLatticeCap = 100;

/// Every block containing `point`, sorted by (size, lexicographic points).
/// Built from minimal blocks of pairs and closed under joins.
std::vector<PointSet> block_lattice_at(const PermGroup& group, Point point,
                                       std::size_t cap = kDefaultLatticeCap);

bool is_primitive(const PermGroup& group);

/// A product of generators (first index acts first) that is a single cycle
/// on all points.
struct FullCycleWitness {
  std::vector<std::size_t> word;  // generator indices
  Permutation element;
};

inline constexpr std::size_t kDefaultCycleSearchLength = 6;

/// Breadth-first search over products of at most `max_length` generators
/// (inverses not used).
std::optional<FullCycleWitness> find_full_cycle(const PermGroup& group,
                                                std::size_t max_length = kDefaultCycleSearchLength);

struct Main1Result {
  bool passed = false;
  bool prime_power = false;
  bool prime = false;
  std::size_t blocks_checked = 0;
  bool all_basic = true;
  bool all_branches = true;
  std::optional<BlockReport> counterexample;
  FullCycleWitness witness;
};

/// Checks that every block at point 0 is basic (and a branch when the degree
/// is prime). The verdict `passed` compares against what the prime-power
/// hypothesis predicts; for a non-prime-power degree the check is still run
/// and `passed` reports whether every block is basic. Throws HypothesisError
/// if no full cycle is found or a generator does not preserve the tree.
Main1Result verify_main1(const TreeShape& shape, const PermGroup& group,
                         std::size_t search_length = kDefaultCycleSearchLength);

struct Main3Result {
  bool passed = false;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Point, Point>> counterexample;
  std::size_t counterexample_block_size = 0;
  FullCycleWitness witness;
};

/// For every pair of points in distinct major branches, the smallest block
/// containing both is the whole level. Throws HypothesisError if no full cycle
/// is certified or the level-1 restriction is imprimitive.
Main3Result verify_main3(const TreeShape& shape, const PermGroup& group,
                         std::size_t search_length = kDefaultCycleSearchLength);

/// Cyclic group of the degree-pq odometer at level n and the orbit of point 0
/// under its q^n-th power.
struct PowerMapResult {
  TreeShape shape;
  BlockReport block;
  bool is_block = false;
};

PowerMapResult power_map_blocks(unsigned p, unsigned q, unsigned n);

struct FatouResult {
  std::size_t block_size = 0;
  std::size_t threshold = 0;  // d^(n-1)
  bool exceeds = false;
  PointSet block;
};

/// Size of the smallest block containing `seed`, compared with d^(n-1).
/// `seed` must meet at least two major branches.
FatouResult fatou_oracle(const TreeShape& shape, const PermGroup& group, std::span<const Point> seed);

bool is_prime(unsigned n);
bool is_prime_power(unsigned n);

}  // namespace imgb
