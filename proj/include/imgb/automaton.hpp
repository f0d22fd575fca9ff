#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imgb/perm.hpp"
#include "imgb/tree.hpp"

namespace imgb {

/// One factor of a formal product of states: a state raised to +1 or -1.
struct Letter {
  std::size_t state = 0;
  int exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A formal product of states, first letter acting first. Empty is the identity.
using StateWord = std::vector<Letter>;

/// Free reduction: cancels adjacent x x^-1 pairs.
StateWord free_reduce(StateWord w);
StateWord inverse_word(const StateWord& w);

/// A finite-state wreath recursion over the alphabet {1..d}.
///
/// Each state carries a root permutation of degree d and one section per
/// letter; the section for letter i describes how the state acts on the
/// subtree below i (indexed by source letter). The action on a word i·w is
/// root(i)·section_i(w). Sections are formal products of states, so states
/// may refer to themselves. State 0 is always the identity, named "id".
class Automaton {
 public:
  static constexpr std::size_t kIdentity = 0;

  explicit Automaton(unsigned degree);

  unsigned degree() const { return degree_; }
  std::size_t size() const { return names_.size(); }

  /// Declares a state with identity root and trivial sections; use define()
  /// to fill it in. Two-phase construction permits self-reference.
  std::size_t declare(const std::string& name);
  void define(std::size_t state, Permutation root, std::vector<StateWord> sections);
  std::size_t add_state(const std::string& name, Permutation root, std::vector<StateWord> sections);

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InputError for an unknown name.
  std::size_t at(std::string_view name) const;
  const std::string& name(std::size_t state) const { return names_.at(state); }
  const Permutation& root(std::size_t state) const { return roots_.at(state); }
  const std::vector<StateWord>& sections(std::size_t state) const { return sections_.at(state); }
  /// Every non-identity state, in declaration order.
  std::vector<std::size_t> generators() const;

  /// Root permutation of a formal product.
  Permutation root_of(const StateWord& w) const;
  /// Section of a formal product at a 0-based letter, freely reduced.
  StateWord section_of(const StateWord& w, unsigned letter) const;

  /// Action on level-k vertices (flat lexicographic indices), computed by
  /// depth-bounded expansion of the recursion.
  Permutation unroll(std::size_t state, unsigned level) const;
  Permutation unroll(const StateWord& w, unsigned level) const;

  std::string word_to_string(const StateWord& w) const;
  /// One line per non-identity state: `name = <s1, ..., sd> (cycles)`.
  std::string to_text() const;
  /// Parses the text form. State names not defined on the left of any line are
  /// rejected; `id` is reserved.
  static Automaton parse(std::string_view text);

 private:
  using MemoKey = std::pair<StateWord, unsigned>;
  Permutation unroll_memo(const StateWord& w, unsigned level, std::map<MemoKey, Permutation>& memo) const;

  unsigned degree_;
  std::vector<std::string> names_;
  std::vector<Permutation> roots_;
  std::vector<std::vector<StateWord>> sections_;
};

/// Searches for a bijection of non-identity states under which the two
/// automata have identical roots and sections. Returns the mapping
/// (name in `a` -> name in `b`) when one exists.
std::optional<std::map<std::string, std::string>> match_up_to_renaming(const Automaton& a,
                                                                      const Automaton& b);

/// The odometer ⟨self, id, ..., id⟩(1 2 ... d) with a single state "a".
Automaton adding_machine(unsigned degree);

/// Finite automaton with one state per internal vertex of a portrait; the
/// root state is named "v0".
Automaton portrait_automaton(const TreePortrait& portrait);

}  // namespace imgb
