#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "imgb/perm.hpp"

namespace imgb {

/// Vertex word over the alphabet {1..d}; the first letter names the major branch.
using Word = std::vector<unsigned>;

/// The complete d-ary rooted tree of height n.
///
/// Level-k vertices are indexed by the lexicographic rank of their word
/// (first letter most significant), so every branch is a contiguous range.
struct TreeShape {
  unsigned degree = 2;
  unsigned height = 1;

  TreeShape() = default;
  TreeShape(unsigned d, unsigned n);

  std::size_t level_size(unsigned k) const;
  std::size_t leaves() const { return level_size(height); }

  std::size_t index_of(const Word& w) const;
  Word word_at(std::size_t index, unsigned length) const;
  Word word_at(std::size_t index) const { return word_at(index, height); }
  /// Letters concatenated when d <= 9, dot-separated otherwise.
  std::string word_string(std::size_t index) const;
  Word parse_word(const std::string& text) const;

  /// Major branch (0-based) of a level-n point.
  std::size_t major_branch(std::size_t index) const { return index / level_size(height - 1); }
};

/// The set of level-n words sharing a prefix of length n - height.
struct Branch {
  Word prefix;
  unsigned height = 0;

  std::vector<std::size_t> points(const TreeShape& shape) const;
};

/// Branch distance: n if the first letters differ, otherwise n - m where
/// m is the length of the common prefix.
unsigned distance(const TreeShape& shape, const Word& v, const Word& w);

enum class BlockClass { SingleBranch, BasicUnion, NotBasic };

struct BlockShape {
  BlockClass kind = BlockClass::NotBasic;
  /// Height of the constituent branches (SingleBranch, BasicUnion), or of the
  /// smallest branch containing the set (NotBasic).
  unsigned height = 0;
  std::size_t count = 0;

  bool basic() const { return kind != BlockClass::NotBasic; }
};

const char* to_string(BlockClass c);

/// Classifies a nonempty set of level-n indices as one branch, a union of
/// at least two equal-height branches inside one branch of height one more,
/// or neither.
BlockShape classify_block_shape(const TreeShape& shape, std::span<const std::size_t> subset);

/// True iff `perm` has degree d^n and is a single d^n-cycle.
bool contains_full_cycle_check(const Permutation& perm, const TreeShape& shape);

/// Level-1 action of a level-n tree automorphism (its root permutation).
Permutation truncate_to_level(const Permutation& perm, const TreeShape& shape, unsigned level);

/// True iff `perm` maps every branch onto a branch of the same height.
bool preserves_tree(const Permutation& perm, const TreeShape& shape);

/// A finite-depth tree automorphism given by a permutation of {1..d} at every
/// internal vertex (breadth-first order, level by level).
class TreePortrait {
 public:
  TreePortrait(TreeShape shape, std::vector<Permutation> vertex_perms);

  static TreePortrait identity(const TreeShape& shape);
  /// Uniform permutation at every internal vertex; with `identity_bias` > 0,
  /// each vertex is independently the identity with that probability.
  static TreePortrait random(const TreeShape& shape, std::mt19937_64& rng,
                             double identity_bias = 0.0);

  const TreeShape& shape() const { return shape_; }
  const Permutation& vertex(unsigned level, std::size_t index) const;

  /// The induced permutation of level-k vertices (k <= height).
  Permutation unroll(unsigned level) const;
  Permutation unroll() const { return unroll(shape_.height); }

  /// Portrait of a∘b (b applied first).
  friend TreePortrait compose(const TreePortrait& a, const TreePortrait& b);

 private:
  TreeShape shape_;
  std::vector<Permutation> perms_;
  std::vector<std::size_t> level_offset_;
};

}  // namespace imgb
