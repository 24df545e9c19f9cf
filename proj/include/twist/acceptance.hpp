#pragma once

#include <functional>
#include <string>
#include <vector>

namespace twist {

/// One measured quantity with its admissible interval [lo, hi].
struct Check {
  std::string label;
  double measured;
  double lo;
  double hi;

  bool passed() const { return measured >= lo && measured <= hi; }
};

struct CriterionResult {
  int id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  /// Set when the criterion threw instead of producing numbers.
  std::string error;

  bool passed() const;
  /// First failing check, or the last one when all pass.
  const Check* headline() const;
};

struct AcceptanceOptions {
  /// Criterion ids to run; empty runs all twelve.
  std::vector<int> only;
  /// Test hook: may rewrite the bounds of any check before it is judged.
  std::function<void(int id, Check&)> tamper;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  C3  title  label: measured in [lo, hi]  (t s)"
std::string format_result(const CriterionResult& r);

}  // namespace twist
