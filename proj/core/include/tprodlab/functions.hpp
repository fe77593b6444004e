#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tprod {

enum class Domain {
  Real,         // all reals
  NonNegative,  // [0, inf), tiny negative roundoff is clipped
  Positive,     // (0, inf), enforced with a relative floor
};

/// A scalar function together with what the inequality checks need to know about it.
struct FunctionSpec {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  Domain domain = Domain::Real;
  bool nondecreasing = false;
  bool convex = false;
  bool strictly_convex = false;
  bool operator_convex = false;
  bool operator_monotone = false;
};

/// Looks a function up by name; throws std::invalid_argument for unknown names.
///
/// Known names: identity, exp, log, neglog, sqrt, square, quartic, inverse,
/// xlogx, cosh, half_square_exp (exp(x^2/2)).
const FunctionSpec& function_by_name(const std::string& name);
std::vector<std::string> function_names();

/// x^k for integer k >= 0 (real domain), or k < 0 (positive domain).
FunctionSpec power_function(int k);

}  // namespace tprod
