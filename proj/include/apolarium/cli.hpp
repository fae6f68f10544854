#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "apolarium/limits.hpp"

namespace apolarium::cli {

/// Exit codes of `run`.
enum Exit : int { ok = 0, violated = 1, usage = 2, guard = 3 };

struct LedgerOutcome {
  bool pass = false;
  nlohmann::json observed;
  nlohmann::json expected;
};

struct LedgerEntry {
  std::string id;
  std::string anchor;
  /// Reported but never asserted.
  bool informational = false;
  std::function<LedgerOutcome(const Limits&)> run;
};

/// Regression ledger executed by `paper-suite`, sorted by id.
std::vector<LedgerEntry> regression_ledger();

/// Items the suite does not attempt; echoed in the relevant reports.
const std::vector<std::string>& out_of_scope();

/// Parses `args` (without the program name), writes one JSON report to
/// `out` and diagnostics to `err`, and returns an exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apolarium::cli
