#pragma once

#include <vector>

#include "tprodlab/functions.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

/// C = U star S star V^H with U, V orthogonal and S f-diagonal.
struct TSVD {
  Tensor3 U;
  Tensor3 S;
  Tensor3 V;
};

/// Per-frequency singular values are sorted descending before S is formed.
TSVD tsvd(const Tensor3& c);

/// Singular values of every DFT slice, column f holding frequency f (descending).
RealMatrix frequency_singular_values(const Tensor3& c);

/// Spectral data of a Hermitian tensor.
///
/// lambda(j, f) is the j-th largest eigenvalue of the f-th DFT slice and
/// vectors[f].col(j) its unit eigenvector. For real input the eigenvectors at
/// mirrored frequencies are conjugates of each other, so tuple eigenmatrices
/// are real.
struct Spectrum {
  Index m = 0;
  Index p = 0;
  /// Input was real; eigen-data then respects conjugate symmetry.
  bool real = false;
  RealMatrix lambda;
  std::vector<Matrix> vectors;

  /// Eigentuples d_1 >= ... >= d_m, one per eigenvalue rank.
  std::vector<Tube> eigentuples;
  /// X_j with DFT columns q_j^(f); satisfies C star X_j = d_j o X_j and X_j^H star X_j = e.
  std::vector<LateralMatrix> tuple_eigenmatrices;

  double lambda_max = 0.0;
  double lambda_min = 0.0;

  /// All mp eigenvalues, descending.
  RealVector eigenvalues() const;
  const Tube& d_max() const { return eigentuples.front(); }
  const Tube& d_min() const { return eigentuples.back(); }

  /// Eigenmatrix supported at a single frequency: DFT equal to q_j^(f) at f and
  /// zero elsewhere. The mp of these reconstruct C as sum lambda W star W^H.
  /// Frobenius norm is 1/sqrt(p).
  LateralMatrix eigenmatrix(Index j, Index f) const;
};

/// Hermitian spectral decomposition. The input is checked against
/// tol * (1 + max |entry|) and then symmetrized.
Spectrum herm_spectrum(const Tensor3& c, double tol = 1e-9);

/// Rebuilds a tensor from per-frequency eigenvectors and (possibly mapped) eigenvalues.
Tensor3 from_spectrum(const std::vector<Matrix>& vectors, const RealMatrix& values);

/// f(C) for Hermitian C, computed per frequency and symmetrized.
Tensor3 tfunc(const Tensor3& c, const FunctionSpec& f);
Tensor3 tfunc(const Spectrum& s, const FunctionSpec& f);

Tensor3 texp(const Tensor3& c);
Tensor3 tlog(const Tensor3& c);
Tensor3 tsqrt(const Tensor3& c);
Tensor3 tcosh(const Tensor3& c);
/// C^k through the spectrum; k < 0 needs a definite tensor.
Tensor3 tpow(const Tensor3& c, int k);

/// Star-inverse of a square tensor, per frequency. Throws DomainError if singular.
Tensor3 tinverse(const Tensor3& c);

/// det(bcirc(C)), the product of the determinants of the DFT slices.
cplx tdet(const Tensor3& c);

/// Largest singular value of bcirc(C).
double spectral_norm(const Tensor3& c);
/// d_max of (C^H star C)^(1/2).
Tube vec_norm(const Tensor3& c);

inline constexpr double kPsdTol = 1e-9;

/// lambda_min(C) >= -tol * (1 + ||C||).
bool is_tpsd(const Tensor3& c, double tol = kPsdTol);
/// lambda_min(C) > tol * (1 + ||C||).
bool is_tpd(const Tensor3& c, double tol = kPsdTol);
/// C <= D, i.e. D - C is TPSD.
bool psd_order(const Tensor3& c, const Tensor3& d, double tol = kPsdTol);
/// Alternative predicate: every component of the smallest eigentuple is >= -tol * (1 + ||C||).
bool is_tpsd_eigentuple(const Tensor3& c, double tol = kPsdTol);

double lambda_max(const Tensor3& c);
double lambda_min(const Tensor3& c);

}  // namespace tprod
