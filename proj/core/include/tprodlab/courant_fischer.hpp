#pragma once

#include <cstdint>
#include <vector>

#include "tprodlab/report.hpp"
#include "tprodlab/spectral.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

/// (X^H star A star X) divided componentwise under odot by X^H star X.
/// Throws DomainError when X^H star X is not odot-invertible.
Tube rayleigh_tuple(const Tensor3& a, const LateralMatrix& x);

/// U_j^[l] = X_j circ(e_l): the l-th cyclic shift of the j-th tuple eigenmatrix
/// (j zero-based, d_0 the largest tuple).
LateralMatrix eigenmatrix_shift(const Spectrum& s, Index j, Index l);

/// Shifts of eigenmatrices j in [first, last); l runs over 0..p-1. As mp-vectors
/// the members are orthonormal.
std::vector<LateralMatrix> shift_basis(const Spectrum& s, Index first, Index last);

/// Linear combination with real coefficients.
LateralMatrix combine(const std::vector<LateralMatrix>& basis, const std::vector<double>& alpha);

/// Largest |<U, V>| - delta(U, V) over pairs, with <U, V> = vec(U)^H vec(V).
double basis_orthonormality_gap(const std::vector<LateralMatrix>& basis);

/// Results of sampling the two spans for one tensor and one rank k (1-based).
struct CfSpanResult {
  /// min over samples of min_j (r - d_k)_j on S_k, normalized by 1 + ||A||.
  double elementwise_top = 0.0;
  /// min over samples of min_j (d_k - r)_j on T_k.
  double elementwise_bottom = 0.0;
  /// Same comparisons in the circulant order: smallest eigenvalue of circ(r - d_k).
  double spectral_top = 0.0;
  double spectral_bottom = 0.0;
  /// |r(U_k) - d_k|.
  double achievability_gap = 0.0;
  /// |r(X circ(c)) - r(X)| for odot-invertible c.
  double scale_gap = 0.0;
  /// Numerator tuple against sum alpha_j^2 d_j, one shift per eigenmatrix.
  double identity_gap = 0.0;
  /// Samples where the elementwise comparison failed.
  std::size_t elementwise_failures = 0;
};

CfSpanResult cf_span_sample(const Tensor3& a, Index k, std::size_t samples, std::uint64_t seed);

/// Smallest eigenvalue of circ(t) for a real tube t, i.e. min_f Re(DFT(t))_f.
double circ_min_eig(const Tube& t);

// Campaigns over random Hermitian tensors; k cycles over 1..m.
/// Literal span inequalities, elementwise, plus achievability.
CheckReport check_cf_span(const CheckConfig& cfg);
/// Span inequalities in the circulant order, plus achievability.
CheckReport check_cf_span_spectral(const CheckConfig& cfg);
/// odot-scale invariance and the convex-combination identity.
CheckReport check_cf_quotient(const CheckConfig& cfg);
/// d_min(A) = -d_max(-A) and lambda_min(A) = -lambda_max(-A).
CheckReport check_minmax_relation(const CheckConfig& cfg);
CheckReport minmax_relation_check(const Tensor3& a);

}  // namespace tprod
