#pragma once

#include <cstdint>
#include <vector>

#include "tprodlab/tensor.hpp"

namespace tprod {

/// Finitely supported random Hermitian tensor: Pr(X = support[s]) = weights[s].
struct Ensemble {
  Index m = 0;
  Index p = 0;
  std::vector<double> weights;
  std::vector<Tensor3> support;

  static Ensemble deterministic(const Tensor3& x);
  /// +B and -B with probability 1/2 each.
  static Ensemble rademacher(const Tensor3& b);
  static Ensemble from_support(std::vector<double> weights, std::vector<Tensor3> support);

  /// Throws std::invalid_argument unless weights are positive and sum to one
  /// (1e-12) and every support point is Hermitian with shape m x m x p.
  void validate() const;

  std::size_t size() const { return support.size(); }
  Tensor3 mean() const;
  /// E X^2.
  Tensor3 second_moment() const;
};

/// Moment and cumulant data at one value of t.
struct MomentReport {
  double t = 0.0;
  Tensor3 mgf;
  Tensor3 cgf;
  Tensor3 psi1;
  Tensor3 psi2;
};

/// E exp(tX). Evaluated directly; for large t prefer cgf, which is shifted.
Tensor3 mgf(const Ensemble& x, double t);
/// log E exp(tX), computed as c I + log E exp(tX - c I) with c the largest
/// support eigenvalue of tX, so it stays finite for large t. Directions of
/// E exp(tX - c I) below rounding level are lifted to a tiny eps, which can
/// only raise the result.
Tensor3 cgf(const Ensemble& x, double t);
MomentReport cumulants(const Ensemble& x, double t);

/// All outcomes of X_1 + ... + X_n for independent finite ensembles, with the
/// spectral data the tail events need.
struct SumLaw {
  /// Mixed-radix digits: outcome index = sum_i digit_i * stride_i.
  std::vector<std::size_t> radix;
  std::vector<double> weight;
  /// All mp eigenvalues of each outcome, descending.
  std::vector<RealVector> eigenvalues;
  /// Real parts of d_max of each outcome.
  std::vector<RealVector> d_max;
  /// Largest |imaginary part| seen in any d_max.
  double max_tuple_imag = 0.0;

  std::size_t size() const { return weight.size(); }
  std::size_t index_of(const std::vector<std::size_t>& digits) const;
};

/// Largest product of support sizes that is enumerated exactly.
inline constexpr std::size_t kMaxEnumerated = std::size_t{1} << 16;

/// Product-law enumeration. Throws std::length_error beyond kMaxEnumerated.
SumLaw enumerate_sum(const std::vector<Ensemble>& ensembles);
std::size_t outcome_count(const std::vector<Ensemble>& ensembles);

}  // namespace tprod
