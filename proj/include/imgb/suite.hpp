#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "imgb/group.hpp"
#include "imgb/monodromy.hpp"

namespace imgb {

struct RunConfig {
  RootOptions roots;
  double clearance = 1e-3;
  unsigned level_cap = 2;
  std::size_t closure_cap = kDefaultClosureCap;
  std::uint64_t seed = 20240601;
  Orientation orientation = Orientation::Counterclockwise;
  bool json = false;

  EngineOptions engine() const;
  void validate() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CriterionResult(const RunConfig&)> run;
};

/// The acceptance checks, in order. Each catches its own exceptions and
/// reports them as a failure.
std::vector<Criterion> acceptance_criteria();

/// Runs every criterion; results come back in criterion order.
std::vector<CriterionResult> run_acceptance(const RunConfig& config);

std::string format_result(const CriterionResult& r);

}  // namespace imgb
