#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "imgb/blocks.hpp"
#include "imgb/perm.hpp"

namespace imgb {

/// Number of critical values of a polynomial and the local degrees of the
/// critical points over each.
struct CriticalPortrait {
  unsigned degree = 2;
  std::vector<std::vector<unsigned>> values;  // local degrees >= 2 per value

  /// Sum over all local degrees k of (k - 1) equals degree - 1, and no value
  /// has more preimage mass than the degree allows.
  bool riemann_hurwitz_valid() const;
  /// Values sorted (each value's degrees descending, values lexicographically)
  /// so that reorderings compare equal.
  CriticalPortrait normalized() const;

  /// `d=6; v1:{2,2}; v2:{2,2}; v3:{2}`
  static CriticalPortrait parse(std::string_view text);
  std::string to_string() const;
};

/// One k-cycle per critical point of local degree k, the rest fixed; sorted
/// descending, fixed points included.
std::vector<std::size_t> generator_cycle_type(unsigned degree, const std::vector<unsigned>& local_degrees);

/// Every portrait of the given degree satisfying the Riemann-Hurwitz count.
std::vector<CriticalPortrait> all_portraits(unsigned degree);

inline constexpr unsigned kMaxHurwitzDegree = 7;

using HurwitzTuple = std::vector<Permutation>;

/// Tuples (s_1, ..., s_k) with s_i of the cycle type of value i and
/// s_k ∘ ... ∘ s_1 a full cycle, one per class under simultaneous
/// conjugation. Representatives have product (1 2 ... d).
std::vector<HurwitzTuple> enumerate_tuples(const CriticalPortrait& portrait);

/// A conjugacy class (in S_d) of generated groups.
struct GroupClass {
  HurwitzTuple representative;
  std::uint64_t order = 0;
  std::size_t tuple_count = 0;
  bool primitive = false;
  std::vector<PointSet> blocks;  // block lattice at point 0
  /// Index of the isomorphism-invariant bucket (order plus element-order census).
  std::size_t invariant_class = 0;
};

struct PortraitAnalysis {
  CriticalPortrait portrait;
  std::size_t tuple_count = 0;
  std::vector<GroupClass> classes;
  std::size_t invariant_class_count = 0;
  /// All tuples generate S_d-conjugate groups.
  bool determined = false;
};

PortraitAnalysis portrait_determines_group(const CriticalPortrait& portrait);

/// True iff some x in S_d maps every generator of A into B by conjugation.
/// With |A| = |B| this is conjugacy of the two groups.
bool conjugate_in_symmetric_group(const std::vector<Permutation>& a_generators,
                                  const std::vector<Permutation>& b_elements);

}  // namespace imgb
