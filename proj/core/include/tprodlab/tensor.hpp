#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tprod {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when operand shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input lies outside the domain of an operation
/// (log of a non-definite tensor, division by a singular tube, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an operation that needs a Hermitian tensor gets one that is not.
class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Length-p complex vector, the scalar-like element of the circulant (odot) algebra.
class Tube {
 public:
  Tube() = default;
  explicit Tube(Index p) : v_(Vector::Zero(p)) {}
  explicit Tube(Vector values) : v_(std::move(values)) {}
  Tube(std::initializer_list<cplx> values);

  /// Identity of the odot product: (1, 0, ..., 0).
  static Tube unit(Index p);
  /// All-ones tube.
  static Tube ones(Index p);

  Index size() const { return v_.size(); }
  cplx& operator[](Index k) { return v_[k]; }
  const cplx& operator[](Index k) const { return v_[k]; }
  const Vector& values() const { return v_; }
  Vector& values() { return v_; }

  Tube& operator+=(const Tube& o);
  Tube& operator-=(const Tube& o);
  Tube& operator*=(cplx s);

  double norm() const { return v_.norm(); }
  /// Largest |imaginary part| over components.
  double max_imag() const;
  RealVector real() const { return v_.real(); }

 private:
  Vector v_;
};

Tube operator+(Tube a, const Tube& b);
Tube operator-(Tube a, const Tube& b);
Tube operator-(Tube a);
Tube operator*(cplx s, Tube a);

/// Dense third-order tensor of shape m x n x p, stored frontal-slice-major
/// (k slowest) and row-major inside each slice, which is also the on-disk order.
class Tensor3 {
 public:
  Tensor3() = default;
  /// Zero tensor.
  Tensor3(Index m, Index n, Index p);
  Tensor3(Index m, Index n, Index p, std::vector<cplx> entries);

  static Tensor3 from_slices(std::span<const Matrix> slices);

  Index m() const { return m_; }
  Index n() const { return n_; }
  Index p() const { return p_; }
  bool is_square() const { return m_ == n_; }
  bool same_shape(const Tensor3& o) const { return m_ == o.m_ && n_ == o.n_ && p_ == o.p_; }

  cplx& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
  const cplx& operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

  /// Frontal slice k (0-based) as a dense matrix.
  Matrix slice(Index k) const;
  void set_slice(Index k, const Matrix& s);
  /// Tube at position (i, j) across all frontal slices.
  Tube tube(Index i, Index j) const;
  void set_tube(Index i, Index j, const Tube& t);

  std::span<const cplx> data() const { return data_; }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(cplx s);

  double frobenius_norm() const;
  double max_abs() const;
  bool is_real(double tol = 0.0) const;

 private:
  std::size_t offset(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((k * m_ + i) * n_ + j);
  }

  Index m_ = 0;
  Index n_ = 0;
  Index p_ = 0;
  std::vector<cplx> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a);
Tensor3 operator*(cplx s, Tensor3 a);
Tensor3 operator*(Tensor3 a, cplx s);

/// An m x p matrix read as an m x 1 x p tensor: column c is frontal slice c.
class LateralMatrix {
 public:
  LateralMatrix() = default;
  LateralMatrix(Index m, Index p) : x_(Matrix::Zero(m, p)) {}
  explicit LateralMatrix(Matrix x) : x_(std::move(x)) {}

  static LateralMatrix from_tensor(const Tensor3& t);
  Tensor3 to_tensor() const;

  Index m() const { return x_.rows(); }
  Index p() const { return x_.cols(); }
  const Matrix& matrix() const { return x_; }
  Matrix& matrix() { return x_; }

  /// Columns stacked top to bottom into an mp vector.
  Vector cunfold() const;
  static LateralMatrix cfold(const Vector& v, Index m, Index p);

  double frobenius_norm() const { return x_.norm(); }

 private:
  Matrix x_;
};

/// Copy with every imaginary part set to zero.
Tensor3 real_part(const Tensor3& t);
Tube real_part(const Tube& t);

void require(bool cond, const std::string& what);

}  // namespace tprod
