#include "tprodlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tprodlab/algebra.hpp"
#include "tprodlab/spectral.hpp"

namespace tprod {

Ensemble Ensemble::deterministic(const Tensor3& x) { return from_support({1.0}, {x}); }

Ensemble Ensemble::rademacher(const Tensor3& b) { return from_support({0.5, 0.5}, {b, -b}); }

Ensemble Ensemble::from_support(std::vector<double> weights, std::vector<Tensor3> support) {
  Ensemble e;
  if (!support.empty()) {
    e.m = support.front().m();
    e.p = support.front().p();
  }
  e.weights = std::move(weights);
  e.support = std::move(support);
  e.validate();
  return e;
}

void Ensemble::validate() const {
  if (support.empty()) throw std::invalid_argument("ensemble: empty support");
  if (weights.size() != support.size()) throw std::invalid_argument("ensemble: weight count differs from support size");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("ensemble: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("ensemble: weights must sum to 1");
  for (const auto& x : support) {
    if (x.m() != m || x.n() != m || x.p() != p) throw std::invalid_argument("ensemble: support shape mismatch");
    if (!is_hermitian(x, 1e-9 * (1.0 + x.max_abs()))) throw std::invalid_argument("ensemble: support point is not Hermitian");
  }
}

Tensor3 Ensemble::mean() const {
  Tensor3 r(m, m, p);
  for (std::size_t s = 0; s < size(); ++s) r += weights[s] * support[s];
  return r;
}

Tensor3 Ensemble::second_moment() const {
  Tensor3 r(m, m, p);
  for (std::size_t s = 0; s < size(); ++s) r += weights[s] * hermitian_part(tprod(support[s], support[s]));
  return r;
}

Tensor3 mgf(const Ensemble& x, double t) {
  Tensor3 r(x.m, x.m, x.p);
  for (std::size_t s = 0; s < x.size(); ++s) r += x.weights[s] * texp(t * x.support[s]);
  return hermitian_part(r);
}

Tensor3 cgf(const Ensemble& x, double t) {
  std::vector<Spectrum> spectra;
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& s : x.support) {
    spectra.push_back(herm_spectrum(t * s));
    shift = std::max(shift, spectra.back().lambda_max);
  }
  const FunctionSpec shifted_exp{"exp_shifted", [shift](double v) { return std::exp(v - shift); }, {}};
  Tensor3 acc(x.m, x.m, x.p);
  for (std::size_t s = 0; s < x.size(); ++s) acc += x.weights[s] * tfunc(spectra[s], shifted_exp);
  // Eigenvalues of the shifted mixture below its rounding error carry no
  // information. Using log(M + eps I) with eps above that error keeps the
  // result above the exact cgf (log is operator monotone), so bounds built on
  // it stay valid even for large t.
  const Spectrum ms = herm_spectrum(hermitian_part(acc));
  const double eps = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(x.m * x.p * x.size()) *
                     std::max(ms.lambda_max, 0.0);
  const FunctionSpec regularized_log{"log_regularized", [eps](double v) { return std::log(std::max(v, 0.0) + eps); }, {}};
  Tensor3 r = tfunc(ms, regularized_log);
  r += shift * identity(x.m, x.p);
  return r;
}

MomentReport cumulants(const Ensemble& x, double t) {
  MomentReport r;
  r.t = t;
  r.mgf = mgf(x, t);
  r.cgf = cgf(x, t);
  r.psi1 = x.mean();
  r.psi2 = x.second_moment() - hermitian_part(tprod(r.psi1, r.psi1));
  return r;
}

std::size_t SumLaw::index_of(const std::vector<std::size_t>& digits) const {
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    idx += digits[i] * stride;
    stride *= radix[i];
  }
  return idx;
}

std::size_t outcome_count(const std::vector<Ensemble>& ensembles) {
  std::size_t total = 1;
  for (const auto& e : ensembles) {
    if (e.size() != 0 && total > kMaxEnumerated * 16 / e.size()) return kMaxEnumerated * 16;
    total *= e.size();
  }
  return total;
}

SumLaw enumerate_sum(const std::vector<Ensemble>& ensembles) {
  if (ensembles.empty()) throw std::invalid_argument("enumerate_sum: no ensembles");
  const std::size_t total = outcome_count(ensembles);
  if (total > kMaxEnumerated) throw std::length_error("enumerate_sum: product support too large to enumerate");
  const Index m = ensembles.front().m, p = ensembles.front().p;
  SumLaw law;
  for (const auto& e : ensembles) law.radix.push_back(e.size());
  law.weight.resize(total);
  law.eigenvalues.resize(total);
  law.d_max.resize(total);
  std::vector<std::size_t> digits(ensembles.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Digits of idx, least significant first.
    std::size_t rest = idx;
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
      digits[i] = rest % law.radix[i];
      rest /= law.radix[i];
    }
    Tensor3 sum(m, m, p);
    double w = 1.0;
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
      sum += ensembles[i].support[digits[i]];
      w *= ensembles[i].weights[digits[i]];
    }
    const Spectrum s = herm_spectrum(sum);
    law.weight[idx] = w;
    law.eigenvalues[idx] = s.eigenvalues();
    law.d_max[idx] = s.d_max().real();
    law.max_tuple_imag = std::max(law.max_tuple_imag, s.d_max().max_imag());
  }
  return law;
}

}  // namespace tprod
