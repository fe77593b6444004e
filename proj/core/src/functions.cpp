#include "tprodlab/functions.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace tprod {

namespace {

std::map<std::string, FunctionSpec> build_catalog() {
  std::map<std::string, FunctionSpec> c;
  auto add = [&c](FunctionSpec s) { c.emplace(s.name, std::move(s)); };

  add({"identity", [](double x) { return x; }, [](double) { return 1.0; }, Domain::Real,
       true, true, false, true, true});
  add({"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
       Domain::Real, true, true, true, false, false});
  add({"log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
       Domain::Positive, true, false, false, false, true});
  add({"neglog", [](double x) { return -std::log(x); }, [](double x) { return -1.0 / x; },
       Domain::Positive, false, true, true, true, false});
  add({"sqrt", [](double x) { return std::sqrt(x); }, [](double x) { return 0.5 / std::sqrt(x); },
       Domain::NonNegative, true, false, false, false, true});
  add({"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, Domain::Real,
       false, true, true, true, false});
  add({"quartic", [](double x) { return x * x * x * x; }, [](double x) { return 4.0 * x * x * x; },
       Domain::Real, false, true, true, false, false});
  add({"inverse", [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); },
       Domain::Positive, false, true, true, true, false});
  add({"xlogx", [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; },
       [](double x) { return std::log(x) + 1.0; }, Domain::Positive, false, true, true, true,
       false});
  add({"cosh", [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
       Domain::Real, false, true, true, false, false});
  add({"half_square_exp", [](double x) { return std::exp(0.5 * x * x); },
       [](double x) { return x * std::exp(0.5 * x * x); }, Domain::Real, false, true, true, false,
       false});
  return c;
}

const std::map<std::string, FunctionSpec>& catalog() {
  static const auto c = build_catalog();
  return c;
}

}  // namespace

const FunctionSpec& function_by_name(const std::string& name) {
  const auto& c = catalog();
  auto it = c.find(name);
  if (it == c.end()) throw std::invalid_argument("unknown function: " + name);
  return it->second;
}

std::vector<std::string> function_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : catalog()) names.push_back(name);
  return names;
}

FunctionSpec power_function(int k) {
  FunctionSpec s;
  s.name = "pow" + std::to_string(k);
  s.f = [k](double x) { return std::pow(x, k); };
  s.df = [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); };
  s.domain = k < 0 ? Domain::Positive : Domain::Real;
  s.convex = k < 0 || k % 2 == 0 || k == 1;
  s.nondecreasing = k == 1;
  return s;
}

}  // namespace tprod
