#pragma once

#include <string>
#include <vector>

namespace tb {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the ten acceptance criteria in order.
std::vector<CriterionResult> run_acceptance();

// One line per criterion: "[PASS] n name: detail" or "[FAIL] ...".
std::string format_line(const CriterionResult& r);

}  // namespace tb
