#pragma once

#include <string>
#include <vector>

namespace titch::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the acceptance criteria (all nine when ids is empty). quick divides
// the trial counts by 20 and skips the runtime targets; the mutation smoke
// test uses it. self_exe is the path of the running binary, spawned with
// TITCHMARSH_MUTATION set for criterion 9.
std::vector<CriterionResult> run(std::vector<int> ids, bool quick, const std::string& self_exe);

std::string format_line(const CriterionResult& r);

}  // namespace titch::selftest
