#include "tprodlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tprodlab/algebra.hpp"
#include "tprodlab/dft.hpp"

namespace tprod {

namespace {

// Eigenpairs of a Hermitian matrix, eigenvalues descending.
void hermitian_eigen(const Matrix& h, bool real, RealVector& values, Matrix& vectors) {
  if (real) {
    const RealMatrix r = 0.5 * (h.real() + h.real().transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(r);
    values = es.eigenvalues().reverse();
    vectors = es.eigenvectors().rowwise().reverse().cast<cplx>();
  } else {
    const Matrix s = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    values = es.eigenvalues().reverse();
    vectors = es.eigenvectors().rowwise().reverse();
  }
}

// Per-frequency SVD (descending). Mirrored frequencies of real input reuse conjugates.
struct FrequencySvd {
  std::vector<Matrix> u, v;
  RealMatrix sigma;
};

FrequencySvd frequency_svd(const Tensor3& c, bool want_vectors) {
  const bool real = c.is_real();
  const auto ch = to_frequency(c);
  const Index p = c.p(), k = std::min(c.m(), c.n());
  FrequencySvd out;
  out.sigma.resize(k, p);
  out.u.resize(static_cast<std::size_t>(p));
  out.v.resize(static_cast<std::size_t>(p));
  const unsigned opts = want_vectors ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : 0u;
  for (Index f = 0; f < p; ++f) {
    const Index g = mirror_frequency(f, p);
    const auto fi = static_cast<std::size_t>(f), gi = static_cast<std::size_t>(g);
    if (real && g < f) {
      out.sigma.col(f) = out.sigma.col(g);
      if (want_vectors) {
        out.u[fi] = out.u[gi].conjugate();
        out.v[fi] = out.v[gi].conjugate();
      }
      continue;
    }
    if (real && g == f) {
      Eigen::JacobiSVD<RealMatrix> svd(ch[fi].real(), opts);
      out.sigma.col(f) = svd.singularValues();
      if (want_vectors) {
        out.u[fi] = svd.matrixU().cast<cplx>();
        out.v[fi] = svd.matrixV().cast<cplx>();
      }
    } else {
      Eigen::JacobiSVD<Matrix> svd(ch[fi], opts);
      out.sigma.col(f) = svd.singularValues();
      if (want_vectors) {
        out.u[fi] = svd.matrixU();
        out.v[fi] = svd.matrixV();
      }
    }
  }
  return out;
}

Tensor3 keep_real(bool real, Tensor3 t) { return real ? real_part(t) : t; }

}  // namespace

TSVD tsvd(const Tensor3& c) {
  const auto fs = frequency_svd(c, true);
  const Index p = c.p();
  std::vector<Matrix> s(static_cast<std::size_t>(p), Matrix::Zero(c.m(), c.n()));
  for (Index f = 0; f < p; ++f)
    for (Index i = 0; i < fs.sigma.rows(); ++i) s[static_cast<std::size_t>(f)](i, i) = fs.sigma(i, f);
  const bool real = c.is_real();
  TSVD r{keep_real(real, from_frequency(fs.u)), keep_real(real, from_frequency(s)),
         keep_real(real, from_frequency(fs.v))};
  // S is f-diagonal by construction; clear roundoff off the diagonal.
  for (Index k = 0; k < p; ++k)
    for (Index i = 0; i < c.m(); ++i)
      for (Index j = 0; j < c.n(); ++j)
        if (i != j) r.S(i, j, k) = 0.0;
  return r;
}

RealMatrix frequency_singular_values(const Tensor3& c) { return frequency_svd(c, false).sigma; }

RealVector Spectrum::eigenvalues() const {
  RealVector all = Eigen::Map<const RealVector>(lambda.data(), lambda.size());
  std::sort(all.data(), all.data() + all.size(), std::greater<double>());
  return all;
}

LateralMatrix Spectrum::eigenmatrix(Index j, Index f) const {
  std::vector<Vector> cols(static_cast<std::size_t>(p), Vector::Zero(m));
  cols[static_cast<std::size_t>(f)] = vectors[static_cast<std::size_t>(f)].col(j);
  return from_frequency(cols);
}

Spectrum herm_spectrum(const Tensor3& c, double tol) {
  require(c.is_square(), "herm_spectrum: tensor is not square");
  if (!is_hermitian(c, tol * (1.0 + c.max_abs())))
    throw NotHermitianError("herm_spectrum: tensor is not Hermitian");

  Spectrum s;
  s.m = c.m();
  s.p = c.p();
  s.real = c.is_real();
  s.lambda.resize(s.m, s.p);
  s.vectors.resize(static_cast<std::size_t>(s.p));

  const auto hf = to_frequency(hermitian_part(c));
  for (Index f = 0; f < s.p; ++f) {
    const Index g = mirror_frequency(f, s.p);
    const auto fi = static_cast<std::size_t>(f);
    if (s.real && g < f) {
      s.lambda.col(f) = s.lambda.col(g);
      s.vectors[fi] = s.vectors[static_cast<std::size_t>(g)].conjugate();
      continue;
    }
    RealVector vals;
    hermitian_eigen(hf[fi], s.real && g == f, vals, s.vectors[fi]);
    s.lambda.col(f) = vals;
  }

  // d_j o X_j multiplies the DFT of X_j at f by the DFT of d_j at -f, so the
  // tuple carries lambda_j at the mirrored frequency.
  for (Index j = 0; j < s.m; ++j) {
    Vector dh(s.p);
    std::vector<Vector> cols;
    for (Index g = 0; g < s.p; ++g) {
      dh[g] = s.lambda(j, mirror_frequency(g, s.p));
      cols.emplace_back(s.vectors[static_cast<std::size_t>(g)].col(j));
    }
    Tube d(idft(dh));
    LateralMatrix x = from_frequency(cols);
    if (s.real) {
      d = real_part(d);
      x = LateralMatrix(Matrix(x.matrix().real().cast<cplx>()));
    }
    s.eigentuples.push_back(std::move(d));
    s.tuple_eigenmatrices.push_back(std::move(x));
  }
  s.lambda_max = s.lambda.maxCoeff();
  s.lambda_min = s.lambda.minCoeff();
  return s;
}

Tensor3 from_spectrum(const std::vector<Matrix>& vectors, const RealMatrix& values) {
  std::vector<Matrix> slices;
  slices.reserve(vectors.size());
  for (std::size_t f = 0; f < vectors.size(); ++f) {
    const Matrix& q = vectors[f];
    slices.push_back(q * values.col(static_cast<Index>(f)).cast<cplx>().asDiagonal() * q.adjoint());
  }
  return from_frequency(slices);
}

Tensor3 tfunc(const Spectrum& s, const FunctionSpec& fn) {
  const double norm = std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  RealMatrix mapped(s.m, s.p);
  switch (fn.domain) {
    case Domain::Positive:
      if (s.lambda_min <= 1e-10 * (1.0 + norm))
        throw DomainError(fn.name + ": tensor is not positive definite");
      break;
    case Domain::NonNegative:
      if (s.lambda_min < -kPsdTol * (1.0 + norm))
        throw DomainError(fn.name + ": tensor is not positive semidefinite");
      break;
    case Domain::Real:
      break;
  }
  for (Index f = 0; f < s.p; ++f)
    for (Index j = 0; j < s.m; ++j) {
      double x = s.lambda(j, f);
      if (fn.domain == Domain::NonNegative) x = std::max(x, 0.0);
      mapped(j, f) = fn.f(x);
    }
  Tensor3 r = hermitian_part(from_spectrum(s.vectors, mapped));
  return s.real ? real_part(r) : r;
}

Tensor3 tfunc(const Tensor3& c, const FunctionSpec& fn) { return tfunc(herm_spectrum(c), fn); }

Tensor3 texp(const Tensor3& c) { return tfunc(c, function_by_name("exp")); }
Tensor3 tlog(const Tensor3& c) { return tfunc(c, function_by_name("log")); }
Tensor3 tsqrt(const Tensor3& c) { return tfunc(c, function_by_name("sqrt")); }
Tensor3 tcosh(const Tensor3& c) { return tfunc(c, function_by_name("cosh")); }
Tensor3 tpow(const Tensor3& c, int k) { return tfunc(c, power_function(k)); }

Tensor3 tinverse(const Tensor3& c) {
  require(c.is_square(), "tinverse: tensor is not square");
  auto ch = to_frequency(c);
  for (auto& s : ch) {
    Eigen::JacobiSVD<Matrix> svd(s);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[sv.size() - 1] <= 1e-14 * sv[0] || sv[0] == 0.0)
      throw DomainError("tinverse: tensor is singular");
    s = s.partialPivLu().inverse().eval();
  }
  return keep_real(c.is_real(), from_frequency(ch));
}

cplx tdet(const Tensor3& c) {
  require(c.is_square(), "tdet: tensor is not square");
  cplx d = 1.0;
  for (const auto& s : to_frequency(c)) d *= s.partialPivLu().determinant();
  return d;
}

double spectral_norm(const Tensor3& c) { return frequency_singular_values(c).maxCoeff(); }

Tube vec_norm(const Tensor3& c) {
  return herm_spectrum(tsqrt(hermitian_part(tprod(herm_transpose(c), c)))).d_max();
}

bool is_tpsd(const Tensor3& c, double tol) {
  const Spectrum s = herm_spectrum(c);
  const double norm = std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  return s.lambda_min >= -tol * (1.0 + norm);
}

bool is_tpd(const Tensor3& c, double tol) {
  const Spectrum s = herm_spectrum(c);
  const double norm = std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  return s.lambda_min > tol * (1.0 + norm);
}

bool psd_order(const Tensor3& c, const Tensor3& d, double tol) { return is_tpsd(d - c, tol); }

bool is_tpsd_eigentuple(const Tensor3& c, double tol) {
  const Spectrum s = herm_spectrum(c);
  const double norm = std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  const RealVector dmin = s.d_min().real();
  return dmin.minCoeff() >= -tol * (1.0 + norm);
}

double lambda_max(const Tensor3& c) { return herm_spectrum(c).lambda_max; }
double lambda_min(const Tensor3& c) { return herm_spectrum(c).lambda_min; }

}  // namespace tprod
