#pragma once

#include <vector>

#include "tprodlab/report.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

/// Smallest eigenvalue of the Hermitian part of C.
double min_eig(const Tensor3& c);

/// Spectral projectors of Hermitian C, one per cluster of eigenvalues whose
/// consecutive gaps are below rel_gap * (1 + ||C||). They sum to the identity.
std::vector<Tensor3> spectral_projectors(const Tensor3& c, double rel_gap = 1e-8);

/// sum_lambda P_lambda star X star P_lambda.
Tensor3 pinch(const std::vector<Tensor3>& projectors, const Tensor3& x);

/// Tr A star (log A - log B) for definite A and B.
double relative_entropy(const Tensor3& a, const Tensor3& b);

// Randomized inequality checks. Each is a pure function of its config.
CheckReport check_trace_monotone(const CheckConfig& cfg);
CheckReport check_trace_convexity(const CheckConfig& cfg);
CheckReport check_peierls(const CheckConfig& cfg);
CheckReport check_transfer_rules(const CheckConfig& cfg);
CheckReport check_trace_exp_monotone(const CheckConfig& cfg);
CheckReport check_golden_thompson(const CheckConfig& cfg);
CheckReport check_pinching(const CheckConfig& cfg);
CheckReport check_jensen(const CheckConfig& cfg);
CheckReport check_klein(const CheckConfig& cfg);
CheckReport check_log_order(const CheckConfig& cfg);
CheckReport check_perspective(const CheckConfig& cfg);
CheckReport check_joint_convexity(const CheckConfig& cfg);
CheckReport check_lieb(const CheckConfig& cfg);
CheckReport check_variational(const CheckConfig& cfg);
CheckReport check_cgf_trace_bound(const CheckConfig& cfg);
CheckReport check_expectation_order(const CheckConfig& cfg);
/// Eigentuple residual ||C star X_j - d_j o X_j|| on random Hermitian tensors.
CheckReport check_eigentuple_residual(const CheckConfig& cfg);
/// Counts disagreements between the spectrum-based and eigentuple-based
/// definiteness predicates. Informational: never fails.
CheckReport check_tpsd_predicates(const CheckConfig& cfg);

}  // namespace tprod
