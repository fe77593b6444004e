#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tprodlab/tensor.hpp"

namespace tprod {

inline constexpr double kMarginTol = 1e-8;
inline constexpr double kEqualityTol = 1e-9;

/// Parameters of one verification campaign.
struct CheckConfig {
  std::string name;
  Index m = 3;
  /// Family sizes (isometry families, number of summands) cycled over trials.
  std::vector<Index> n_family{2, 3};
  Index p = 3;
  std::size_t trials = 500;
  std::uint64_t seed = 7;
  double scale = 1.0;
  double tol = kMarginTol;
  /// Function names from the catalog; empty means the check's default list.
  std::vector<std::string> functions;
};

/// Outcome of one campaign. Margins are signed slacks divided by a normalizer
/// (1 + the largest Frobenius norm among operands and evaluated sides), so a
/// check passes when worst_margin >= -tolerance.
struct CheckReport {
  std::string name;
  /// Which result is being checked, in words.
  std::string anchor;
  Index m = 0;
  Index p = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double tolerance = kMarginTol;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::uint64_t worst_seed = 0;
  /// Largest |margin| over the equality instances (zero when there are none).
  double max_equality_gap = 0.0;
  double equality_tolerance = kEqualityTol;
  std::vector<std::uint64_t> failing_seeds;
  /// Extra per-check counters and statistics, summed over trials.
  std::map<std::string, double> stats;
  std::string note;
  bool pass = false;
};

/// What a single trial reports back to the driver.
struct TrialOutcome {
  double margin = std::numeric_limits<double>::infinity();
  double equality_gap = 0.0;
  std::map<std::string, double> stats;

  /// Record a signed slack already normalized.
  void slack(double normalized) { margin = std::min(margin, normalized); }
  /// Record rhs - lhs for "lhs <= rhs", normalized by 1 + scale.
  void leq(double lhs, double rhs, double scale) { slack((rhs - lhs) / (1.0 + scale)); }
  /// Record the deviation of an instance that should be an equality.
  void equality(double lhs, double rhs, double scale) {
    equality_gap = std::max(equality_gap, std::abs(rhs - lhs) / (1.0 + scale));
  }
  void count(const std::string& key, double v = 1.0) { stats[key] += v; }
};

using TrialFn = std::function<TrialOutcome(std::size_t trial, std::uint64_t trial_seed)>;

/// Runs cfg.trials independent trials (in parallel; results are stored by trial
/// index so the report does not depend on scheduling) and aggregates them.
CheckReport run_trials(const CheckConfig& cfg, const std::string& name, const std::string& anchor,
                       const TrialFn& trial);

/// Largest number of failing seeds kept in a report.
inline constexpr std::size_t kMaxFailingSeeds = 16;

}  // namespace tprod
