#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "tprodlab/algebra.hpp"
#include "tprodlab/bounds.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/spectral.hpp"

using namespace tprod;

namespace {

Tensor3 scalar(double v) {
  Tensor3 t(1, 1, 1);
  t(0, 0, 0) = v;
  return t;
}

std::vector<Ensemble> coins(std::size_t n) {
  return std::vector<Ensemble>(n, Ensemble::rademacher(scalar(1.0)));
}

Ensemble two_point(Index m, Index p, std::uint64_t seed, double w = 0.3) {
  return Ensemble::from_support({w, 1.0 - w}, {gen_hermitian(m, p, seed), gen_hermitian(m, p, seed + 1)});
}

double binomial_tail(int n, int k_min) {
  double total = 0.0;
  for (int k = k_min; k <= n; ++k) total += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
  return total / std::pow(2.0, n);
}

}  // namespace

TEST(Ensembles, ValidationRejectsBadInput) {
  EXPECT_THROW(Ensemble::from_support({0.5, 0.4}, {scalar(1), scalar(2)}), std::invalid_argument);
  EXPECT_THROW(Ensemble::from_support({1.0}, {gen_tensor(2, 2, 2, 1)}), std::invalid_argument);
  EXPECT_THROW(Ensemble::from_support({-0.5, 1.5}, {scalar(1), scalar(2)}), std::invalid_argument);
}

TEST(Ensembles, CgfMatchesDenseLogOfMgf) {
  const Ensemble x = two_point(3, 3, 5);
  for (double t : {0.1, 0.5, 2.0}) {
    Matrix dense = Matrix::Zero(9, 9);
    for (std::size_t s = 0; s < x.size(); ++s)
      dense += x.weights[s] * oracle::herm_func(oracle::bcirc(t * x.support[s]), [](double v) { return std::exp(v); });
    const Tensor3 ref = oracle::from_bcirc(oracle::herm_func(dense, [](double v) { return std::log(v); }), 3, 3, 3);
    EXPECT_LT(oracle::rel_err(cgf(x, t), ref), 1e-10) << "t=" << t;
    EXPECT_LT(oracle::rel_err(mgf(x, t), oracle::from_bcirc(dense, 3, 3, 3)), 1e-11);
  }
}

TEST(Ensembles, CgfStaysFiniteAndAboveTheLinearTermForLargeT) {
  const Ensemble x = two_point(3, 3, 8);
  const double t = 80.0;
  const Tensor3 k = cgf(x, t);
  EXPECT_TRUE(std::isfinite(k.frobenius_norm()));
  // log E e^{tX} >= t E X (Jensen), so lambda_max(K) >= t lambda_max(E X) in trace.
  EXPECT_GE(bcirc_trace(k).real(), t * bcirc_trace(x.mean()).real() - 1e-6 * t);
  double top = 0.0;
  for (const auto& s : x.support) top = std::max(top, lambda_max(s));
  EXPECT_NEAR(lambda_max(k), t * top + std::log(std::max(x.weights[0], x.weights[1])), 0.05 * t);
}

TEST(ScalarCoins, FourFairCoinsAboveFour) {
  BoundQuery q;
  q.ensembles = coins(4);
  q.theta = 4.0;
  q.trials = 100000;
  const SumLaw law = enumerate_sum(q.ensembles);
  EXPECT_DOUBLE_EQ(exact_tail_eig(law, 4.0), 1.0 / 16.0);
  const BoundTrace master = master_bound_eig(q);
  EXPECT_GE(master.bound, 1.0 / 16.0);
  // Closed form for Rademacher coins: exp(-4t) cosh(t)^4.
  for (std::size_t i = 0; i < q.t_grid.size(); ++i) {
    const double t = q.t_grid[i];
    EXPECT_NEAR(master.log_values[i], 4.0 * std::log(std::cosh(t)) - 4.0 * t, 1e-9 * (1.0 + 4.0 * t));
  }
  const TailEstimate mc = monte_carlo_tail(q, TailEvent::Eigenvalue);
  EXPECT_LE(std::abs(mc.frequency - 1.0 / 16.0), mc.ci_halfwidth);
}

TEST(ScalarCoins, SampledPathMatchesBinomialBeyondEnumeration) {
  // 2^17 outcomes exceed the enumeration cap, so the sampler evaluates each draw.
  BoundQuery q;
  q.ensembles = coins(17);
  q.theta = 5.0;
  q.trials = 40000;
  EXPECT_GT(outcome_count(q.ensembles), kMaxEnumerated);
  const double exact = binomial_tail(17, 11);
  const TailEstimate mc = monte_carlo_tail(q, TailEvent::Eigenvalue);
  EXPECT_LE(std::abs(mc.frequency - exact), mc.ci_halfwidth + 1e-4);
  EXPECT_GE(master_bound_eig(q).bound, exact);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  BoundQuery q;
  q.ensembles = {two_point(2, 2, 1), two_point(2, 2, 3)};
  q.theta = 0.5;
  q.trials = 30000;
  setenv("TPRODLAB_THREADS", "1", 1);
  const TailEstimate a = monte_carlo_tail(q, TailEvent::Eigenvalue);
  setenv("TPRODLAB_THREADS", "5", 1);
  const TailEstimate b = monte_carlo_tail(q, TailEvent::Eigenvalue);
  unsetenv("TPRODLAB_THREADS");
  EXPECT_EQ(a.frequency, b.frequency);
}

TEST(Bounds, LaplaceBoundMatchesDenseTrace) {
  const Ensemble x = two_point(2, 3, 11);
  const std::vector<double> grid{0.2, 1.0, 3.0};
  const BoundTrace tr = laplace_bound_eig(x, 0.7, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double e = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s)
      e += x.weights[s] * oracle::exp_series(oracle::bcirc(grid[i] * x.support[s]), 80).trace().real();
    EXPECT_NEAR(tr.log_values[i], std::log(e) - 0.7 * grid[i], 1e-10);
  }
}

TEST(Bounds, OrderingOfTheCorollaries) {
  BoundQuery q;
  q.ensembles = {two_point(3, 2, 1), two_point(3, 2, 5), two_point(3, 2, 9)};
  q.theta = 1.5;
  const BoundTrace master = master_bound_eig(q);
  const BoundTrace maj = majorant_bound(q, default_majorant(q.ensembles));
  const BoundTrace mean = mean_mgf_bound(q);
  for (std::size_t i = 0; i < q.t_grid.size(); ++i) {
    EXPECT_LE(master.log_values[i], mean.log_values[i] + 1e-9 * (1.0 + std::abs(mean.log_values[i])));
    if (!std::isnan(maj.log_values[i])) EXPECT_LE(master.log_values[i], maj.log_values[i] + 1e-9 * (1.0 + std::abs(maj.log_values[i])));
  }
  const double exact = exact_tail_eig(enumerate_sum(q.ensembles), q.theta);
  EXPECT_LE(exact, master.bound);
}

TEST(Bounds, MajorantsHold) {
  std::vector<Ensemble> ens{Ensemble::rademacher(gen_hermitian(2, 3, 1)), Ensemble::rademacher(gen_hermitian(2, 3, 2))};
  for (double t : {0.01, 0.5, 3.0, 20.0}) {
    EXPECT_GE(majorant_slack(default_majorant(ens), ens, t), -1e-9) << t;
    EXPECT_GE(majorant_slack(rademacher_majorant(ens), ens, t), -1e-9) << t;
  }
  EXPECT_THROW(rademacher_majorant({two_point(2, 3, 1)}), std::invalid_argument);
}

TEST(Bounds, SubadditivityAndItsEqualityCase) {
  const std::vector<Ensemble> ens{two_point(3, 3, 1), two_point(3, 3, 4, 0.6)};
  const CheckReport r = subadditivity_check(ens, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.stats.at("margin_bcirc_trace"), -1e-12);
  EXPECT_GE(r.stats.at("margin_f_diagonal_trace"), -1e-12);
  const CheckReport one = subadditivity_check({ens.front()}, 1.0);
  EXPECT_NEAR(one.worst_margin, 0.0, 1e-12);
}

TEST(Eigentuple, OdotExponentialAgreesWithCirculantOracle) {
  const Tube b{0.3, -0.2, 0.5, 0.1};
  for (double t : {0.5, 2.0}) {
    const Tube ref = oracle::first_column(oracle::exp_series(oracle::circ(t * b), 60));
    const auto logs = log_odot_exp(b, t);
    for (Index j = 0; j < 4; ++j) {
      if (ref[j].real() > 0) {
        EXPECT_NEAR(logs[static_cast<std::size_t>(j)], std::log(ref[j].real()), 1e-11);
      } else {
        EXPECT_TRUE(std::isnan(logs[static_cast<std::size_t>(j)]));
      }
    }
  }
}

TEST(Eigentuple, PreconditionHoldsForSmallTOnly) {
  // m = 1, p = 2, frequency eigenvalues (1, 0): the tube (0.5, 0.5).
  Tensor3 s(1, 1, 2);
  s(0, 0, 0) = 0.5;
  s(0, 0, 1) = 0.5;
  EXPECT_TRUE(eigentuple_precondition(s, 0.01));
  EXPECT_FALSE(eigentuple_precondition(s, 5.0));
  // Direct evaluation: (1/p) e^{p t lmax} + 1 - 1/p <= e^{t} + 1.
  for (double t : {0.05, 0.3, 0.6, 1.0, 2.0}) {
    const bool direct = 0.5 * std::exp(2.0 * t) + 0.5 <= std::exp(t) + 1.0;
    EXPECT_EQ(eigentuple_precondition(s, t), direct) << t;
  }
  // p = 1 never restricts.
  EXPECT_TRUE(eigentuple_precondition(scalar(3.0), 50.0));
}

TEST(Eigentuple, ReducesToTheEigenvalueBoundWhenPIsOne) {
  BoundQuery q;
  q.ensembles = {two_point(3, 1, 2), two_point(3, 1, 6)};
  q.theta = 0.8;
  q.b = Tube{0.8};
  const BoundTrace a = master_bound_eigentuple(q);
  const BoundTrace b = master_bound_eig(q);
  for (std::size_t i = 0; i < q.t_grid.size(); ++i)
    EXPECT_NEAR(a.log_values[i], b.log_values[i], 1e-12 * (1.0 + std::abs(b.log_values[i])));
}

TEST(Eigentuple, BoundCanFallBelowTheTailProbability) {
  // X = O with p = 2: d_max = (0, 0) >= b = (0, -1) always, yet the first
  // component of e_o^{tb} is cosh t, so the bound 2 / cosh t drops below 1.
  BoundQuery q;
  q.ensembles = {Ensemble::deterministic(Tensor3(1, 1, 2))};
  q.b = Tube{0.0, -1.0};
  q.t_grid = log_grid(0.1, 10.0, 20);
  const BoundTrace tr = master_bound_eigentuple(q);
  EXPECT_EQ(tr.defined_points, q.t_grid.size());
  EXPECT_NEAR(tr.log_values.back(), std::log(2.0) - std::log(std::cosh(10.0)), 1e-12);
  const double exact = exact_tail_eigentuple(enumerate_sum(q.ensembles), q.b);
  EXPECT_DOUBLE_EQ(exact, 1.0);
  EXPECT_LT(tr.bound, exact);
}

TEST(Eigentuple, RefusesWhenNoGridPointQualifies) {
  BoundQuery q;
  Tensor3 s(1, 1, 2);
  s(0, 0, 0) = 0.5;
  s(0, 0, 1) = 0.5;
  q.ensembles = {Ensemble::deterministic(s)};
  q.b = Tube{0.0, 0.0};
  q.t_grid = {5.0, 10.0};
  EXPECT_THROW(master_bound_eigentuple(q), PreconditionError);
}

TEST(Markov, VectorVersionAndTightCase) {
  std::vector<RealVector> samples;
  Rng rng(3);
  for (int i = 0; i < 500; ++i) samples.push_back(RealVector::NullaryExpr(3, [&](Index) { return std::abs(rng.normal()); }));
  RealVector a(3);
  a << 0.5, 1.0, 0.8;
  EXPECT_TRUE(markov_vector_check(samples, a).pass);
  const CheckReport tight = markov_vector_check(std::vector<RealVector>(5, a), a);
  EXPECT_DOUBLE_EQ(tight.stats.at("frequency"), 1.0);
  EXPECT_DOUBLE_EQ(tight.stats.at("bound"), 1.0);
  EXPECT_THROW(markov_vector_check(samples, -a), std::invalid_argument);
}

TEST(Campaigns, RandomEnsembleChecksPass) {
  CheckConfig cfg;
  cfg.trials = 6;
  for (auto fn : {check_subadditivity, check_tail_bounds, check_eigentuple_bounds, check_markov_vector, check_cumulant_series}) {
    const CheckReport r = fn(cfg);
    EXPECT_TRUE(r.pass) << r.name << " worst=" << r.worst_margin << " eq=" << r.max_equality_gap;
  }
}
