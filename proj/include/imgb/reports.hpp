#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "imgb/automaton.hpp"
#include "imgb/blocks.hpp"
#include "imgb/construct.hpp"
#include "imgb/group.hpp"
#include "imgb/monodromy.hpp"

namespace imgb {

using Json = nlohmann::ordered_json;

struct AnalyzeConfig {
  unsigned level = 1;
  EngineOptions engine;
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t lattice_cap = kDefaultLatticeCap;
};

struct LevelReport {
  unsigned level = 1;
  std::vector<GeneratorAction> generators;
  BigInt order = 0;
  bool transitive = false;
  bool lattice_computed = false;
  std::vector<BlockReport> blocks;  // lattice at the first point
  InfinityCycle infinity;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, FatouResult>> fatou;  // per pair of major branches
};

struct AnalyzeReport {
  Polynomial poly;
  CriticalData critical;
  std::vector<double> punctures;
  bool postcritically_finite = false;
  double base = 0.0;
  double epsilon = 0.0;
  bool real_convention = true;
  Orientation orientation = Orientation::Counterclockwise;
  std::vector<std::string> warnings;
  std::vector<LevelReport> levels;
  std::optional<Automaton> automaton;
  std::vector<std::vector<std::string>> section_words;  // [state][letter], puncture letters
};

/// Runs the monodromy engine up to the configured level and gathers the
/// block structure of each level.
AnalyzeReport analyze(const Polynomial& poly, const AnalyzeConfig& config);

Json block_json(const TreeShape& shape, const BlockReport& block);
Json permutation_json(const Permutation& p);
Json to_json(const AnalyzeReport& report);
std::string to_text(const AnalyzeReport& report);

/// A constructed polynomial and the facts checked while building it.
struct ConstructReport {
  std::string name;
  Polynomial poly;
  Json details;
};

/// `which` is f, g, h, conservative-cubic or power; `degree` is used by power.
ConstructReport construct_named(const std::string& which, unsigned degree = 0);
std::string to_text(const ConstructReport& report);

}  // namespace imgb
