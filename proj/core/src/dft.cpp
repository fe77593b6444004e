#include "tprodlab/dft.hpp"

#include <cmath>
#include <numbers>

namespace tprod {

std::vector<cplx> twiddles(Index p) {
  std::vector<cplx> w(static_cast<std::size_t>(p));
  for (Index r = 0; r < p; ++r) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
    w[static_cast<std::size_t>(r)] = cplx(std::cos(angle), std::sin(angle));
  }
  w[0] = cplx(1.0, 0.0);
  return w;
}

namespace {

template <typename T, typename Zero>
std::vector<T> transform(const std::vector<T>& in, bool inverse, Zero zero) {
  const auto p = static_cast<Index>(in.size());
  const auto w = twiddles(p);
  std::vector<T> out(in.size(), zero);
  for (Index f = 0; f < p; ++f) {
    T acc = zero;
    for (Index k = 0; k < p; ++k) {
      Index r = (f * k) % p;
      if (inverse) r = (p - r) % p;
      acc += in[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(r)];
    }
    if (inverse) acc /= static_cast<double>(p);
    out[static_cast<std::size_t>(f)] = std::move(acc);
  }
  return out;
}

}  // namespace

Vector dft(const Vector& x) {
  const Index p = x.size();
  const auto w = twiddles(p);
  Vector out = Vector::Zero(p);
  for (Index f = 0; f < p; ++f)
    for (Index k = 0; k < p; ++k) out[f] += x[k] * w[static_cast<std::size_t>((f * k) % p)];
  return out;
}

Vector idft(const Vector& xhat) {
  const Index p = xhat.size();
  const auto w = twiddles(p);
  Vector out = Vector::Zero(p);
  for (Index k = 0; k < p; ++k) {
    for (Index f = 0; f < p; ++f)
      out[k] += xhat[f] * w[static_cast<std::size_t>((p - (f * k) % p) % p)];
    out[k] /= static_cast<double>(p);
  }
  return out;
}

std::vector<Matrix> to_frequency(const Tensor3& c) {
  std::vector<Matrix> slices;
  slices.reserve(static_cast<std::size_t>(c.p()));
  for (Index k = 0; k < c.p(); ++k) slices.push_back(c.slice(k));
  return transform(slices, false, Matrix::Zero(c.m(), c.n()).eval());
}

Tensor3 from_frequency(const std::vector<Matrix>& slices) {
  require(!slices.empty(), "no frequency slices");
  auto time = transform(slices, true, Matrix::Zero(slices[0].rows(), slices[0].cols()).eval());
  return Tensor3::from_slices(time);
}

std::vector<Vector> to_frequency(const LateralMatrix& x) {
  std::vector<Vector> cols;
  cols.reserve(static_cast<std::size_t>(x.p()));
  for (Index k = 0; k < x.p(); ++k) cols.emplace_back(x.matrix().col(k));
  return transform(cols, false, Vector::Zero(x.m()).eval());
}

LateralMatrix from_frequency(const std::vector<Vector>& cols) {
  require(!cols.empty(), "no frequency columns");
  auto time = transform(cols, true, Vector::Zero(cols[0].size()).eval());
  Matrix x(cols[0].size(), static_cast<Index>(time.size()));
  for (std::size_t k = 0; k < time.size(); ++k) x.col(static_cast<Index>(k)) = time[k];
  return LateralMatrix(std::move(x));
}

}  // namespace tprod
