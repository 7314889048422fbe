#pragma once

// The acceptance criteria as runnable checks, shared by `modform verify`
// and the acceptance test binary.

#include <iosfwd>
#include <string>
#include <vector>

namespace modform {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  /// Informational lines printed under the result; never affect `pass`.
  std::vector<std::string> notes;
};

inline constexpr int kCriterionCount = 10;

std::string criterion_title(int id);
CriterionResult run_criterion(int id);

/// Runs the given criteria (all when empty), printing one line each as it
/// finishes. Returns true when every criterion passed.
bool run_acceptance(const std::vector<int>& ids, std::ostream& out);

}  // namespace modform
