#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tprodlab/report.hpp"

namespace tprod {

using CheckFn = std::function<CheckReport(const CheckConfig&)>;

struct CheckEntry {
  std::string name;
  /// "tverify", "trand" or "tcf".
  std::string suite;
  CheckFn run;
  /// Trials used when the caller does not set a count.
  std::size_t default_trials = 500;
  /// Informational checks report counts; their pass flag is always true.
  bool informational = false;
};

/// Every registered check, in report order.
const std::vector<CheckEntry>& check_registry();

/// Throws std::invalid_argument for unknown names.
const CheckEntry& find_check(const std::string& name);

/// "all", "tverify", "trand", "tcf".
std::vector<std::string> suite_names();

/// Checks of `suite` (empty means none), followed by the named checks not
/// already included. Unknown suite or check names throw std::invalid_argument
/// before anything runs.
std::vector<const CheckEntry*> select_checks(const std::string& suite, const std::vector<std::string>& names);

/// Runs one check with cfg, filling in the name.
CheckReport run_check(const CheckEntry& entry, CheckConfig cfg);

}  // namespace tprod
