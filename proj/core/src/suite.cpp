#include "tprodlab/suite.hpp"

#include <algorithm>
#include <stdexcept>

#include "tprodlab/bounds.hpp"
#include "tprodlab/courant_fischer.hpp"
#include "tprodlab/inequalities.hpp"

namespace tprod {

const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> registry{
      {"trace_monotone", "tverify", check_trace_monotone},
      {"trace_convexity", "tverify", check_trace_convexity},
      {"peierls", "tverify", check_peierls},
      {"transfer_rules", "tverify", check_transfer_rules},
      {"trace_exp_monotone", "tverify", check_trace_exp_monotone},
      {"golden_thompson", "tverify", check_golden_thompson},
      {"pinching", "tverify", check_pinching},
      {"jensen", "tverify", check_jensen},
      {"klein", "tverify", check_klein},
      {"log_order", "tverify", check_log_order},
      {"perspective", "tverify", check_perspective},
      {"joint_convexity", "tverify", check_joint_convexity},
      {"lieb", "tverify", check_lieb},
      {"variational", "tverify", check_variational},
      {"cgf_trace_bound", "tverify", check_cgf_trace_bound},
      {"expectation_order", "tverify", check_expectation_order},
      {"eigentuple_residual", "tverify", check_eigentuple_residual},
      {"tpsd_predicates", "tverify", check_tpsd_predicates, 500, true},
      {"subadditivity", "trand", check_subadditivity, 200},
      {"tail_bounds", "trand", check_tail_bounds, 24},
      {"eigentuple_bounds", "trand", check_eigentuple_bounds, 24},
      {"markov_vector", "trand", check_markov_vector, 200},
      {"cumulant_series", "trand", check_cumulant_series, 200},
      {"cf_span", "tcf", check_cf_span},
      {"cf_span_spectral", "tcf", check_cf_span_spectral},
      {"cf_quotient", "tcf", check_cf_quotient},
      {"minmax_relation", "tcf", check_minmax_relation},
  };
  return registry;
}

const CheckEntry& find_check(const std::string& name) {
  for (const auto& e : check_registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown check '" + name + "'");
}

std::vector<std::string> suite_names() { return {"all", "tverify", "trand", "tcf"}; }

std::vector<const CheckEntry*> select_checks(const std::string& suite, const std::vector<std::string>& names) {
  const auto suites = suite_names();
  if (!suite.empty() && std::find(suites.begin(), suites.end(), suite) == suites.end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  // Validate every name before selecting anything.
  std::vector<const CheckEntry*> named;
  for (const auto& n : names) named.push_back(&find_check(n));
  std::vector<const CheckEntry*> out;
  if (!suite.empty())
    for (const auto& e : check_registry())
      if (suite == "all" || e.suite == suite) out.push_back(&e);
  for (const auto* e : named)
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

CheckReport run_check(const CheckEntry& entry, CheckConfig cfg) {
  cfg.name = entry.name;
  CheckReport r = entry.run(cfg);
  if (entry.informational) r.pass = true;
  return r;
}

}  // namespace tprod
