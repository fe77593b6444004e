#include "tprodlab/report.hpp"

#include <cmath>

#include "tprodlab/parallel.hpp"
#include "tprodlab/rng.hpp"

namespace tprod {

CheckReport run_trials(const CheckConfig& cfg, const std::string& name, const std::string& anchor,
                       const TrialFn& trial) {
  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::vector<std::uint64_t> seeds(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) seeds[i] = derive_seed(cfg.seed, i);
  parallel_for(cfg.trials, [&](std::size_t i) { outcomes[i] = trial(i, seeds[i]); });

  CheckReport r;
  r.name = name;
  r.anchor = anchor;
  r.m = cfg.m;
  r.p = cfg.p;
  r.seed = cfg.seed;
  r.trials = cfg.trials;
  r.tolerance = cfg.tol;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const auto& o = outcomes[i];
    // NaN margins count as failures.
    const double margin = std::isnan(o.margin) ? -std::numeric_limits<double>::infinity() : o.margin;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_seed = seeds[i];
    }
    r.max_equality_gap = std::max(r.max_equality_gap, o.equality_gap);
    const bool failed = margin < -r.tolerance || o.equality_gap > r.equality_tolerance;
    if (failed && r.failing_seeds.size() < kMaxFailingSeeds) r.failing_seeds.push_back(seeds[i]);
    for (const auto& [k, v] : o.stats) r.stats[k] += v;
  }
  r.pass = r.worst_margin >= -r.tolerance && r.max_equality_gap <= r.equality_tolerance;
  return r;
}

}  // namespace tprod
