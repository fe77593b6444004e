#include "tprodlab/courant_fischer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tprodlab/algebra.hpp"
#include "tprodlab/dft.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/rng.hpp"

namespace tprod {

namespace {

double max_abs(const Tube& t) { return t.size() == 0 ? 0.0 : t.values().cwiseAbs().maxCoeff(); }

double min_real(const Tube& t) { return t.values().real().minCoeff(); }

LateralMatrix random_lateral(Index m, Index p, Rng& rng) {
  LateralMatrix x(m, p);
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < p; ++k) x.matrix()(i, k) = rng.normal();
  return x;
}

std::vector<double> normals(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

}  // namespace

Tube rayleigh_tuple(const Tensor3& a, const LateralMatrix& x) {
  require(a.m() == a.n() && a.m() == x.m() && a.p() == x.p(), "rayleigh_tuple: shape mismatch");
  const Tube num = lateral_inner(x, tensor_times_matrix(a, x));
  const Tube den = lateral_inner(x, x);
  return odot_div(num, den);
}

LateralMatrix eigenmatrix_shift(const Spectrum& s, Index j, Index l) {
  require(j >= 0 && j < s.m && l >= 0 && l < s.p, "eigenmatrix_shift: index out of range");
  Tube e(s.p);
  e[l] = 1.0;
  return dprod(e, s.tuple_eigenmatrices[static_cast<std::size_t>(j)]);
}

std::vector<LateralMatrix> shift_basis(const Spectrum& s, Index first, Index last) {
  require(0 <= first && first <= last && last <= s.m, "shift_basis: bad range");
  std::vector<LateralMatrix> out;
  for (Index j = first; j < last; ++j)
    for (Index l = 0; l < s.p; ++l) out.push_back(eigenmatrix_shift(s, j, l));
  return out;
}

LateralMatrix combine(const std::vector<LateralMatrix>& basis, const std::vector<double>& alpha) {
  require(!basis.empty() && basis.size() == alpha.size(), "combine: coefficient count mismatch");
  LateralMatrix x(basis.front().m(), basis.front().p());
  for (std::size_t i = 0; i < basis.size(); ++i) x.matrix() += alpha[i] * basis[i].matrix();
  return x;
}

double basis_orthonormality_gap(const std::vector<LateralMatrix>& basis) {
  double gap = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Vector vi = basis[i].cunfold();
    for (std::size_t j = i; j < basis.size(); ++j) {
      const cplx ip = vi.dot(basis[j].cunfold());
      gap = std::max(gap, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  }
  return gap;
}

double circ_min_eig(const Tube& t) { return dft(real_part(t).values()).real().minCoeff(); }

CfSpanResult cf_span_sample(const Tensor3& a, Index k, std::size_t samples, std::uint64_t seed) {
  const Spectrum s = herm_spectrum(a);
  require(k >= 1 && k <= s.m, "cf_span_sample: k must lie in 1..m");
  const double norm = 1.0 + std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  const Tube& dk = s.eigentuples[static_cast<std::size_t>(k - 1)];
  const auto top = shift_basis(s, 0, k);
  const auto bottom = shift_basis(s, k - 1, s.m);
  Rng rng(seed);
  CfSpanResult r;
  r.elementwise_top = r.elementwise_bottom = std::numeric_limits<double>::infinity();
  r.spectral_top = r.spectral_bottom = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < samples; ++n) {
    const Tube up = rayleigh_tuple(a, combine(top, normals(top.size(), rng))) - dk;
    const Tube down = dk - rayleigh_tuple(a, combine(bottom, normals(bottom.size(), rng)));
    const double et = min_real(up) / norm, eb = min_real(down) / norm;
    r.elementwise_top = std::min(r.elementwise_top, et);
    r.elementwise_bottom = std::min(r.elementwise_bottom, eb);
    if (std::min(et, eb) < -kMarginTol) ++r.elementwise_failures;
    r.spectral_top = std::min(r.spectral_top, circ_min_eig(up) / norm);
    r.spectral_bottom = std::min(r.spectral_bottom, circ_min_eig(down) / norm);
  }

  const LateralMatrix& uk = s.tuple_eigenmatrices[static_cast<std::size_t>(k - 1)];
  r.achievability_gap = max_abs(rayleigh_tuple(a, uk) - dk) / norm;

  // odot-scaling by a random tube c; c is invertible with probability one.
  const LateralMatrix x = random_lateral(s.m, s.p, rng);
  Tube c(s.p);
  for (Index l = 0; l < s.p; ++l) c[l] = rng.normal();
  r.scale_gap = max_abs(rayleigh_tuple(a, dprod(c, x)) - rayleigh_tuple(a, x)) / norm;

  // One shift per eigenmatrix: X^H A X = sum alpha_j^2 d_j exactly.
  std::vector<LateralMatrix> picks;
  std::vector<double> alpha;
  Tube target(s.p);
  double weight = 0.0;
  for (Index j = 0; j < s.m; ++j) {
    picks.push_back(eigenmatrix_shift(s, j, static_cast<Index>(rng.below(static_cast<std::uint64_t>(s.p)))));
    alpha.push_back(rng.normal());
    target += (alpha.back() * alpha.back()) * s.eigentuples[static_cast<std::size_t>(j)];
    weight += alpha.back() * alpha.back();
  }
  const LateralMatrix xi = combine(picks, alpha);
  const Tube num = lateral_inner(xi, tensor_times_matrix(a, xi));
  r.identity_gap = max_abs(num - target) / (norm * weight);
  return r;
}

CheckReport check_cf_span(const CheckConfig& cfg) {
  auto report = run_trials(cfg, "cf_span", "Courant-Fischer span inequalities for eigentuples (elementwise order)",
                           [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 a = gen_hermitian(cfg.m, cfg.p, seed, cfg.scale);
    const Index k = 1 + static_cast<Index>(trial % static_cast<std::size_t>(cfg.m));
    const CfSpanResult r = cf_span_sample(a, k, 16, derive_seed(seed, 1));
    o.slack(r.elementwise_top);
    o.slack(r.elementwise_bottom);
    o.equality(0.0, r.achievability_gap, 0.0);
    o.count("elementwise_failing_samples", static_cast<double>(r.elementwise_failures));
    if (r.elementwise_failures > 0) o.count("elementwise_failing_k" + std::to_string(k));
    return o;
  });
  report.note = "rayleigh tuple compared with d_k componentwise on the top-k and bottom shift spans, real coefficients";
  return report;
}

CheckReport check_cf_span_spectral(const CheckConfig& cfg) {
  auto report = run_trials(cfg, "cf_span_spectral", "Courant-Fischer span inequalities for eigentuples (circulant order)",
                           [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 a = gen_hermitian(cfg.m, cfg.p, seed, cfg.scale);
    const Index k = 1 + static_cast<Index>(trial % static_cast<std::size_t>(cfg.m));
    const CfSpanResult r = cf_span_sample(a, k, 16, derive_seed(seed, 1));
    o.slack(r.spectral_top);
    o.slack(r.spectral_bottom);
    o.equality(0.0, r.achievability_gap, 0.0);
    return o;
  });
  report.note = "differences r - d_k are compared through the eigenvalues of circ(r - d_k)";
  return report;
}

CheckReport check_cf_quotient(const CheckConfig& cfg) {
  return run_trials(cfg, "cf_quotient", "odot-quotient structure of the Rayleigh tuple",
                    [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 a = gen_hermitian(cfg.m, cfg.p, seed, cfg.scale);
    const Index k = 1 + static_cast<Index>(trial % static_cast<std::size_t>(cfg.m));
    const CfSpanResult r = cf_span_sample(a, k, 1, derive_seed(seed, 1));
    o.equality(0.0, r.scale_gap, 0.0);
    o.equality(0.0, r.identity_gap, 0.0);
    o.equality(0.0, basis_orthonormality_gap(shift_basis(herm_spectrum(a), 0, cfg.m)), 0.0);
    return o;
  });
}

CheckReport minmax_relation_check(const Tensor3& a) {
  const Spectrum s = herm_spectrum(a);
  const Spectrum n = herm_spectrum(-a);
  const double norm = 1.0 + std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  CheckReport r;
  r.name = "minmax_relation";
  r.anchor = "minimum and maximum eigentuple relations";
  r.m = a.m();
  r.p = a.p();
  r.trials = 1;
  const double tuple_gap = max_abs(s.d_min() + n.d_max()) / norm;
  const double value_gap = std::abs(s.lambda_min + n.lambda_max) / norm;
  r.max_equality_gap = std::max(tuple_gap, value_gap);
  r.stats["tuple_gap"] = tuple_gap;
  r.stats["lambda_gap"] = value_gap;
  r.pass = tuple_gap <= kEqualityTol && value_gap <= 1e-12;
  return r;
}

CheckReport check_minmax_relation(const CheckConfig& cfg) {
  auto report = run_trials(cfg, "minmax_relation", "minimum and maximum eigentuple relations",
                           [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const CheckReport r = minmax_relation_check(gen_hermitian(cfg.m, cfg.p, seed, cfg.scale));
    o.equality(0.0, r.stats.at("tuple_gap"), 0.0);
    if (r.stats.at("lambda_gap") > 1e-12) o.count("lambda_gap_above_1e-12");
    return o;
  });
  if (report.stats.count("lambda_gap_above_1e-12")) report.pass = false;
  return report;
}

}  // namespace tprod
