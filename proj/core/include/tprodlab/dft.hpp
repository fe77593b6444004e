#pragma once

#include <vector>

#include "tprodlab/tensor.hpp"

namespace tprod {

// Length-p discrete Fourier transform along the tube (third) mode.
//
// Convention, fixed across the library:
//   forward  X[f] = sum_k x[k] * w^(f*k),          w = exp(-2*pi*i/p)
//   inverse  x[k] = (1/p) * sum_f X[f] * w^(-f*k)
// Twiddles are tabulated from the reduced exponent (f*k mod p), so results do
// not depend on the order in which frequencies are visited.

/// Tabulated powers w^r, r = 0..p-1.
std::vector<cplx> twiddles(Index p);

Vector dft(const Vector& x);
Vector idft(const Vector& xhat);

/// DFT-domain frontal slices: entry f is sum_k C^(k) w^(f*k).
std::vector<Matrix> to_frequency(const Tensor3& c);
/// Inverse of to_frequency.
Tensor3 from_frequency(const std::vector<Matrix>& slices);

/// DFT of each column of an m x p lateral matrix (one m-vector per frequency).
std::vector<Vector> to_frequency(const LateralMatrix& x);
LateralMatrix from_frequency(const std::vector<Vector>& cols);

/// Index of the frequency paired with f under complex conjugation, (p - f) mod p.
inline Index mirror_frequency(Index f, Index p) { return (p - f) % p; }

}  // namespace tprod
