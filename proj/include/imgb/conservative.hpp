#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imgb/perm.hpp"

namespace imgb {

/// Monodromy generators of a polynomial whose critical points are all fixed:
/// one single cycle per critical value.
struct CycleSystem {
  unsigned degree = 0;
  std::vector<Cycle> cycles;  // 0-based points

  std::vector<Permutation> generators() const;
  /// Throws InputError unless lengths sum correctly, the union graph is
  /// connected and any two cycles share at most one point.
  void validate() const;

  /// One cycle per line in 1-based cycle notation, e.g. "(1 2 3)".
  static CycleSystem parse(std::string_view text, unsigned degree);
  std::string to_string() const;
};

using Edge = std::pair<Point, Point>;

struct GammaGraphs {
  std::vector<Edge> gamma;        // one edge per (u, C(u)) with u moved by C
  std::vector<std::size_t> gamma_cycle;
  std::vector<Edge> gamma_prime;  // the edge leaving each cycle's maximal point removed
  std::vector<std::size_t> gamma_prime_cycle;
  bool gamma_connected = false;
  bool gamma_prime_connected = false;
  /// Faces from Euler's formula V - E + F = 2 applied to the reduced graph.
  long faces = 0;
  bool tree = false;
};

GammaGraphs gamma_graphs(const CycleSystem& system);

struct WitnessStep {
  std::size_t cycle = 0;
  long exponent = 0;

  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

/// Steps in application order (the first step acts first).
using WitnessWord = std::vector<WitnessStep>;

/// A word in the cycles that maps a to c and fixes b, following the shortest
/// reduced-graph path from a to c and the corrections for b.
/// Requires a != b, c != b; the single-cycle fallback needs two cycles.
WitnessWord witness(const CycleSystem& system, Point a, Point b, Point c);

Permutation evaluate(const CycleSystem& system, const WitnessWord& word);

std::size_t witness_length_bound(const CycleSystem& system);

/// Delegates to the pair-orbit test. Throws PreconditionError with fewer
/// than two cycles.
bool check_doubly_transitive(const CycleSystem& system);

/// A valid system of the given degree with at least `min_cycles` cycles,
/// built by attaching each new cycle to one existing point.
CycleSystem random_cycle_system(unsigned degree, unsigned min_cycles, std::mt19937_64& rng);

}  // namespace imgb
