#pragma once

// Runtime self-check: runs the invariant suites of every module and reports
// the first violated property.

#include <iosfwd>
#include <string>
#include <vector>

namespace betatail::verify {

enum class Level { Quick, Full };

/// Deliberate corruptions used to confirm that the suite catches them.
enum class Fault { None, FlipScaleSign };

struct CheckOutcome {
  std::string label;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::vector<CheckOutcome> checks;

  bool passed() const;
  const CheckOutcome* first_failure() const;
};

/// Runs the suites in a fixed order and stops at the first failing check.
/// Progress lines go to `log` when it is non-null.
Report run(Level level, Fault fault = Fault::None, std::ostream* log = nullptr);

}  // namespace betatail::verify
