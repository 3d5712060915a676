#pragma once

#include <string>
#include <vector>

namespace nahm {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

// characters, asymptotics, dilog, minimal, coset, families, duality.
const std::vector<std::string>& verify_suites();

// Replays the known-B catalogues, the infinite families and the printed
// expansions end to end. `suite` is one of verify_suites() or "all".
// Throws InputError for an unknown suite.
std::vector<CheckResult> run_verify(const std::string& suite, unsigned jobs = 1);

}  // namespace nahm
