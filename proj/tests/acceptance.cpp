#include <iostream>

#include "imgb/suite.hpp"

// One line per acceptance criterion; nonzero exit if any fails.
int main() {
  bool all = true;
  for (const auto& c : imgb::acceptance_criteria()) {
    const auto r = c.run(imgb::RunConfig{});
    std::cout << imgb::format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
