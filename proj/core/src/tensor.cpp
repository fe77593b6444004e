#include "tprodlab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace tprod {

void require(bool cond, const std::string& what) {
  if (!cond) throw DimensionError(what);
}

Tube::Tube(std::initializer_list<cplx> values) : v_(static_cast<Index>(values.size())) {
  Index k = 0;
  for (const auto& x : values) v_[k++] = x;
}

Tube Tube::unit(Index p) {
  Tube e(p);
  e[0] = 1.0;
  return e;
}

Tube Tube::ones(Index p) { return Tube(Vector::Ones(p)); }

Tube& Tube::operator+=(const Tube& o) {
  require(size() == o.size(), "tube length mismatch");
  v_ += o.v_;
  return *this;
}

Tube& Tube::operator-=(const Tube& o) {
  require(size() == o.size(), "tube length mismatch");
  v_ -= o.v_;
  return *this;
}

Tube& Tube::operator*=(cplx s) {
  v_ *= s;
  return *this;
}

double Tube::max_imag() const {
  double r = 0.0;
  for (Index k = 0; k < v_.size(); ++k) r = std::max(r, std::abs(v_[k].imag()));
  return r;
}

Tube operator+(Tube a, const Tube& b) { return a += b; }
Tube operator-(Tube a, const Tube& b) { return a -= b; }
Tube operator-(Tube a) { return a *= -1.0; }
Tube operator*(cplx s, Tube a) { return a *= s; }

Tensor3::Tensor3(Index m, Index n, Index p)
    : m_(m), n_(n), p_(p), data_(static_cast<std::size_t>(m * n * p), cplx{0.0, 0.0}) {
  require(m > 0 && n > 0 && p > 0, "tensor dimensions must be positive");
}

Tensor3::Tensor3(Index m, Index n, Index p, std::vector<cplx> entries)
    : m_(m), n_(n), p_(p), data_(std::move(entries)) {
  require(m > 0 && n > 0 && p > 0, "tensor dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(m * n * p),
          "entry count must equal m*n*p");
}

Tensor3 Tensor3::from_slices(std::span<const Matrix> slices) {
  require(!slices.empty(), "need at least one frontal slice");
  Tensor3 t(slices.front().rows(), slices.front().cols(), static_cast<Index>(slices.size()));
  for (Index k = 0; k < t.p_; ++k) t.set_slice(k, slices[static_cast<std::size_t>(k)]);
  return t;
}

Matrix Tensor3::slice(Index k) const {
  Matrix s(m_, n_);
  for (Index i = 0; i < m_; ++i)
    for (Index j = 0; j < n_; ++j) s(i, j) = (*this)(i, j, k);
  return s;
}

void Tensor3::set_slice(Index k, const Matrix& s) {
  require(s.rows() == m_ && s.cols() == n_, "slice shape mismatch");
  for (Index i = 0; i < m_; ++i)
    for (Index j = 0; j < n_; ++j) (*this)(i, j, k) = s(i, j);
}

Tube Tensor3::tube(Index i, Index j) const {
  Tube t(p_);
  for (Index k = 0; k < p_; ++k) t[k] = (*this)(i, j, k);
  return t;
}

void Tensor3::set_tube(Index i, Index j, const Tube& t) {
  require(t.size() == p_, "tube length mismatch");
  for (Index k = 0; k < p_; ++k) (*this)(i, j, k) = t[k];
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  require(same_shape(o), "tensor shape mismatch in +");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += o.data_[q];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  require(same_shape(o), "tensor shape mismatch in -");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= o.data_[q];
  return *this;
}

Tensor3& Tensor3::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double Tensor3::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double Tensor3::max_abs() const {
  double r = 0.0;
  for (const auto& x : data_) r = std::max(r, std::abs(x));
  return r;
}

bool Tensor3::is_real(double tol) const {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](const cplx& x) { return std::abs(x.imag()) <= tol; });
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator-(Tensor3 a) { return a *= -1.0; }
Tensor3 operator*(cplx s, Tensor3 a) { return a *= s; }
Tensor3 operator*(Tensor3 a, cplx s) { return a *= s; }

LateralMatrix LateralMatrix::from_tensor(const Tensor3& t) {
  require(t.n() == 1, "lateral matrix needs an m x 1 x p tensor");
  Matrix x(t.m(), t.p());
  for (Index k = 0; k < t.p(); ++k)
    for (Index i = 0; i < t.m(); ++i) x(i, k) = t(i, 0, k);
  return LateralMatrix(std::move(x));
}

Tensor3 LateralMatrix::to_tensor() const {
  Tensor3 t(m(), 1, p());
  for (Index k = 0; k < p(); ++k)
    for (Index i = 0; i < m(); ++i) t(i, 0, k) = x_(i, k);
  return t;
}

Vector LateralMatrix::cunfold() const {
  return Eigen::Map<const Vector>(x_.data(), x_.size());
}

LateralMatrix LateralMatrix::cfold(const Vector& v, Index m, Index p) {
  require(v.size() == m * p, "cfold length mismatch");
  return LateralMatrix(Eigen::Map<const Matrix>(v.data(), m, p));
}

Tensor3 real_part(const Tensor3& t) {
  std::vector<cplx> e(t.data().begin(), t.data().end());
  for (auto& x : e) x = cplx(x.real(), 0.0);
  return Tensor3(t.m(), t.n(), t.p(), std::move(e));
}

Tube real_part(const Tube& t) { return Tube(Vector(t.values().real().cast<cplx>())); }

}  // namespace tprod
