#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tprodlab/ensemble.hpp"
#include "tprodlab/report.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

// Tail bounds for sums of independent finite ensembles. Every trace in this
// module is the block-circulant trace tr(bcirc(.)), the sum of all mp
// eigenvalues; the Laplace-transform argument needs lambda_max <= trace for
// definite tensors, which fails for the f-diagonal trace.

/// Raised when an eigentuple bound has no grid point satisfying its hypothesis.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Event slack: lambda >= theta is evaluated as lambda >= theta - kEventTol * (1 + |theta|),
/// which can only enlarge the event (so bound checks stay conservative).
inline constexpr double kEventTol = 1e-9;

/// `points` log-spaced values in [t_min, t_max].
std::vector<double> log_grid(double t_min = 1e-2, double t_max = 1e2, std::size_t points = 50);

struct BoundQuery {
  std::vector<Ensemble> ensembles;
  double theta = 0.0;
  /// Threshold tube for eigentuple events.
  Tube b;
  std::vector<double> t_grid = log_grid();
  std::size_t trials = 100000;
  std::uint64_t seed = 7;
};

/// A bound evaluated at every grid point. log_values[i] is NaN where the bound
/// is undefined at t[i] (hypothesis fails, or no usable component).
struct BoundTrace {
  std::string name;
  std::vector<double> t;
  std::vector<double> log_values;
  /// exp(min over defined grid points); +inf when none is defined.
  double bound = 0.0;
  double best_t = 0.0;
  std::size_t defined_points = 0;

  double value_at(std::size_t i) const;
};

/// Majorant of the cgfs used by the majorant bounds: f(t) A_i >= log E exp(t X_i).
struct Majorant {
  std::string name;
  std::function<double(double)> f;
  std::vector<Tensor3> a;
};

/// f(t) = t, A_i = max(0, largest support eigenvalue of X_i) I. Valid for any ensemble.
Majorant default_majorant(const std::vector<Ensemble>& ensembles);
/// For Rademacher ensembles +-B_i: f(t) = t^2 / 2 and A_i = B_i^2.
Majorant rademacher_majorant(const std::vector<Ensemble>& ensembles);
/// Checks the majorant hypothesis at t; returns the normalized slack (>= -tol passes).
double majorant_slack(const Majorant& maj, const std::vector<Ensemble>& ensembles, double t);

/// log tr(bcirc(exp(H))) for Hermitian H, computed as a log-sum-exp of eigenvalues.
double log_btr_exp(const Tensor3& h);

/// min over the grid of exp(-theta t) E tr exp(tX).
BoundTrace laplace_bound_eig(const Ensemble& x, double theta, const std::vector<double>& t_grid);
/// min over the grid of exp(-theta t) tr exp(sum_i log E exp(t X_i)).
BoundTrace master_bound_eig(const BoundQuery& q);
BoundTrace majorant_bound(const BoundQuery& q, const Majorant& maj);
BoundTrace mean_mgf_bound(const BoundQuery& q);

/// (1/p) lambda_max(e^{tS})^p + 1 - 1/p <= tr(bcirc(e^{tS})), compared in logs.
bool eigentuple_precondition(const Tensor3& s, double t);
/// Same test from a descending list of the mp eigenvalues of S.
bool eigentuple_precondition(const RealVector& eigenvalues, Index p, double t);
/// Holds for every outcome of X_1 + ... + X_n.
bool eigentuple_precondition(const std::vector<Ensemble>& ensembles, double t);
bool eigentuple_precondition(const SumLaw& law, Index p, double t);

/// log of each component of e_o^{tb}; NaN where the component is <= 0.
std::vector<double> log_odot_exp(const Tube& b, double t);

/// Grid points failing the precondition are dropped. Throws PreconditionError
/// when none remain.
BoundTrace master_bound_eigentuple(const BoundQuery& q);
BoundTrace majorant_bound_eigentuple(const BoundQuery& q, const Majorant& maj);
BoundTrace mean_mgf_bound_eigentuple(const BoundQuery& q);

/// Exact probabilities by enumerating the product law.
double exact_tail_eig(const SumLaw& law, double theta);
double exact_tail_eigentuple(const SumLaw& law, const Tube& b);
bool tuple_event(const RealVector& d, const Tube& b);

enum class TailEvent { Eigenvalue, Eigentuple };

struct TailEstimate {
  double frequency = 0.0;
  /// 99% normal-approximation half-width.
  double ci_halfwidth = 0.0;
  std::size_t trials = 0;
};

/// I.i.d. draws from the product law. Independent of the thread count.
TailEstimate monte_carlo_tail(const BoundQuery& q, TailEvent event);

/// E tr exp(sum t X_i) <= tr exp(sum log E exp(t X_i)), exact over the
/// product law, with both the block-circulant and the f-diagonal trace.
CheckReport subadditivity_check(const std::vector<Ensemble>& ensembles, double t, double tol = kMarginTol);

/// Pr(X >= a) <= min_i E X_i / a_i for the empirical law of nonnegative samples.
CheckReport markov_vector_check(const std::vector<RealVector>& samples, const RealVector& a,
                                double tol = kMarginTol);

// Randomized campaigns over ensemble configurations.
CheckReport check_subadditivity(const CheckConfig& cfg);
CheckReport check_tail_bounds(const CheckConfig& cfg);
CheckReport check_eigentuple_bounds(const CheckConfig& cfg);
CheckReport check_markov_vector(const CheckConfig& cfg);
CheckReport check_cumulant_series(const CheckConfig& cfg);

}  // namespace tprod
