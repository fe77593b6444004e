#pragma once

#include "tprodlab/tensor.hpp"

namespace tprod {

// Block-circulant embedding. Block (r, c) of bcirc(C) is slice (r - c) mod p.
Matrix bcirc(const Tensor3& c);
/// Reads the first block column back; requires an (mp x np) matrix.
Tensor3 bcirc_inv(const Matrix& b, Index m, Index n, Index p);

/// Frontal slices stacked vertically: (mp x n).
Matrix unfold(const Tensor3& c);
Tensor3 fold(const Matrix& u, Index p);

/// T-product through per-frequency matrix products.
Tensor3 tprod(const Tensor3& c, const Tensor3& d);
/// T-product through the dense block-circulant path. Slow; used for cross-checks.
Tensor3 tprod_dense(const Tensor3& c, const Tensor3& d);

Tensor3 herm_transpose(const Tensor3& c);
Tensor3 transpose(const Tensor3& c);

Tensor3 identity(Index m, Index p);
Tensor3 zero(Index m, Index n, Index p);

/// Hermitian in the T-product sense: C = C^H. Tolerance is absolute on entries.
bool is_hermitian(const Tensor3& c, double tol = 0.0);
/// (C + C^H) / 2.
Tensor3 hermitian_part(const Tensor3& c);

/// Sum of the f-diagonal entries c_iik over i and k.
cplx trace(const Tensor3& c);
/// Trace of bcirc(C), which is p * (trace of the first frontal slice)
/// and the sum of all mp eigenvalues for Hermitian C.
cplx bcirc_trace(const Tensor3& c);

// Tube (circulant) algebra.
Matrix circ(const Tube& a);
/// circ(a) * b, a cyclic convolution.
Tube odot(const Tube& a, const Tube& b);
/// The x solving a = b odot x. Throws DomainError when a DFT coefficient of b
/// has modulus <= tol * (1 + max modulus).
Tube odot_div(const Tube& a, const Tube& b, double tol = 1e-12);
/// Exponential in the odot algebra: first column of exp(circ(a)).
Tube odot_exp(const Tube& a);

/// X * circ(d) for an m x p lateral matrix X.
LateralMatrix dprod(const Tube& d, const LateralMatrix& x);
/// C star X, with X read as an m x 1 x p tensor.
LateralMatrix tensor_times_matrix(const Tensor3& c, const LateralMatrix& x);
/// X^H star Y as a tube.
Tube lateral_inner(const LateralMatrix& x, const LateralMatrix& y);

/// Hermitian embedding [O C; C^H O] of an m x n x p tensor.
Tensor3 dilation(const Tensor3& c);

}  // namespace tprod
