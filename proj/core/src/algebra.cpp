#include "tprodlab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "tprodlab/dft.hpp"

namespace tprod {

namespace {

// Products of real tensors are real; drop the roundoff imaginary parts so that
// realness survives long chains of operations.
Tensor3 realify_if(bool real, Tensor3 t) { return real ? real_part(t) : t; }
Tube realify_if(bool real, Tube t) { return real ? real_part(t) : t; }

bool tube_is_real(const Tube& a) { return a.max_imag() == 0.0; }

}  // namespace

Matrix bcirc(const Tensor3& c) {
  const Index m = c.m(), n = c.n(), p = c.p();
  Matrix b(m * p, n * p);
  for (Index r = 0; r < p; ++r)
    for (Index col = 0; col < p; ++col) b.block(r * m, col * n, m, n) = c.slice((r - col + p) % p);
  return b;
}

Tensor3 bcirc_inv(const Matrix& b, Index m, Index n, Index p) {
  require(b.rows() == m * p && b.cols() == n * p, "bcirc_inv: matrix is not (mp x np)");
  Tensor3 c(m, n, p);
  for (Index k = 0; k < p; ++k) c.set_slice(k, b.block(k * m, 0, m, n));
  return c;
}

Matrix unfold(const Tensor3& c) {
  Matrix u(c.m() * c.p(), c.n());
  for (Index k = 0; k < c.p(); ++k) u.block(k * c.m(), 0, c.m(), c.n()) = c.slice(k);
  return u;
}

Tensor3 fold(const Matrix& u, Index p) {
  require(p > 0 && u.rows() % p == 0, "fold: row count not divisible by p");
  const Index m = u.rows() / p;
  Tensor3 c(m, u.cols(), p);
  for (Index k = 0; k < p; ++k) c.set_slice(k, u.block(k * m, 0, m, u.cols()));
  return c;
}

Tensor3 tprod(const Tensor3& c, const Tensor3& d) {
  require(c.n() == d.m() && c.p() == d.p(), "tprod: dimension mismatch");
  auto ch = to_frequency(c);
  const auto dh = to_frequency(d);
  for (std::size_t f = 0; f < ch.size(); ++f) ch[f] = ch[f] * dh[f];
  return realify_if(c.is_real() && d.is_real(), from_frequency(ch));
}

Tensor3 tprod_dense(const Tensor3& c, const Tensor3& d) {
  require(c.n() == d.m() && c.p() == d.p(), "tprod: dimension mismatch");
  return fold(bcirc(c) * unfold(d), c.p());
}

Tensor3 herm_transpose(const Tensor3& c) {
  Tensor3 r(c.n(), c.m(), c.p());
  for (Index k = 0; k < c.p(); ++k) r.set_slice(k, c.slice((c.p() - k) % c.p()).adjoint());
  return r;
}

Tensor3 transpose(const Tensor3& c) {
  Tensor3 r(c.n(), c.m(), c.p());
  for (Index k = 0; k < c.p(); ++k) r.set_slice(k, c.slice((c.p() - k) % c.p()).transpose());
  return r;
}

Tensor3 identity(Index m, Index p) {
  Tensor3 t(m, m, p);
  for (Index i = 0; i < m; ++i) t(i, i, 0) = 1.0;
  return t;
}

Tensor3 zero(Index m, Index n, Index p) { return Tensor3(m, n, p); }

bool is_hermitian(const Tensor3& c, double tol) {
  if (!c.is_square()) return false;
  const Tensor3 h = herm_transpose(c);
  for (Index k = 0; k < c.p(); ++k)
    for (Index i = 0; i < c.m(); ++i)
      for (Index j = 0; j < c.n(); ++j)
        if (std::abs(c(i, j, k) - h(i, j, k)) > tol) return false;
  return true;
}

Tensor3 hermitian_part(const Tensor3& c) {
  require(c.is_square(), "hermitian_part: tensor is not square");
  Tensor3 h = c + herm_transpose(c);
  h *= 0.5;
  return h;
}

cplx trace(const Tensor3& c) {
  require(c.is_square(), "trace: tensor is not square");
  cplx s = 0.0;
  for (Index k = 0; k < c.p(); ++k)
    for (Index i = 0; i < c.m(); ++i) s += c(i, i, k);
  return s;
}

cplx bcirc_trace(const Tensor3& c) {
  require(c.is_square(), "bcirc_trace: tensor is not square");
  cplx s = 0.0;
  for (Index i = 0; i < c.m(); ++i) s += c(i, i, 0);
  return static_cast<double>(c.p()) * s;
}

Matrix circ(const Tube& a) {
  const Index p = a.size();
  Matrix c(p, p);
  for (Index r = 0; r < p; ++r)
    for (Index col = 0; col < p; ++col) c(r, col) = a[(r - col + p) % p];
  return c;
}

Tube odot(const Tube& a, const Tube& b) {
  require(a.size() == b.size(), "odot: tube length mismatch");
  const Vector ah = dft(a.values());
  const Vector bh = dft(b.values());
  return realify_if(tube_is_real(a) && tube_is_real(b), Tube(idft(ah.cwiseProduct(bh))));
}

Tube odot_div(const Tube& a, const Tube& b, double tol) {
  require(a.size() == b.size(), "odot_div: tube length mismatch");
  const Vector ah = dft(a.values());
  const Vector bh = dft(b.values());
  const double scale = 1.0 + bh.cwiseAbs().maxCoeff();
  for (Index f = 0; f < bh.size(); ++f)
    if (std::abs(bh[f]) <= tol * scale) throw DomainError("odot_div: divisor is singular in the odot algebra");
  return realify_if(tube_is_real(a) && tube_is_real(b), Tube(idft(ah.cwiseQuotient(bh))));
}

Tube odot_exp(const Tube& a) {
  Vector ah = dft(a.values());
  for (Index f = 0; f < ah.size(); ++f) ah[f] = std::exp(ah[f]);
  return realify_if(tube_is_real(a), Tube(idft(ah)));
}

LateralMatrix dprod(const Tube& d, const LateralMatrix& x) {
  require(d.size() == x.p(), "dprod: tube length mismatch");
  return LateralMatrix(x.matrix() * circ(d));
}

LateralMatrix tensor_times_matrix(const Tensor3& c, const LateralMatrix& x) {
  require(c.n() == x.m() && c.p() == x.p(), "tensor_times_matrix: dimension mismatch");
  return LateralMatrix::from_tensor(tprod(c, x.to_tensor()));
}

Tube lateral_inner(const LateralMatrix& x, const LateralMatrix& y) {
  require(x.m() == y.m() && x.p() == y.p(), "lateral_inner: dimension mismatch");
  const Tensor3 r = tprod(herm_transpose(x.to_tensor()), y.to_tensor());
  return r.tube(0, 0);
}

Tensor3 dilation(const Tensor3& c) {
  const Index m = c.m(), n = c.n(), p = c.p();
  const Tensor3 ch = herm_transpose(c);
  Tensor3 d(m + n, m + n, p);
  for (Index k = 0; k < p; ++k) {
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) {
        d(i, m + j, k) = c(i, j, k);
        d(m + j, i, k) = ch(j, i, k);
      }
  }
  return d;
}

}  // namespace tprod
