#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "tprodlab/algebra.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/inequalities.hpp"
#include "tprodlab/parallel.hpp"
#include "tprodlab/rng.hpp"
#include "tprodlab/spectral.hpp"
#include "tprodlab/suite.hpp"

using namespace tprod;

namespace {

struct ThreadCap {
  explicit ThreadCap(const char* v) { setenv("TPRODLAB_THREADS", v, 1); }
  ~ThreadCap() { unsetenv("TPRODLAB_THREADS"); }
};

CheckConfig small(std::size_t trials) {
  CheckConfig cfg;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

TEST(Rng, DeterministicAndDecorrelated) {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(7, i));
  EXPECT_EQ(seeds.size(), 1000u);
  Rng r(1);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / 20000, 0.0, 0.05);
  EXPECT_NEAR(sq / 20000, 1.0, 0.05);
}

TEST(Parallel, EnvironmentCapsWorkers) {
  {
    ThreadCap cap("3");
    EXPECT_EQ(thread_count(), 3u);
  }
  ThreadCap bad("zero");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Parallel, ReportsDoNotDependOnThreadCount) {
  CheckReport one, many;
  {
    ThreadCap cap("1");
    one = check_golden_thompson(small(40));
  }
  {
    ThreadCap cap("4");
    many = check_golden_thompson(small(40));
  }
  EXPECT_EQ(one.worst_margin, many.worst_margin);
  EXPECT_EQ(one.worst_seed, many.worst_seed);
  EXPECT_EQ(one.max_equality_gap, many.max_equality_gap);
  EXPECT_EQ(one.stats, many.stats);
}

TEST(Parallel, ExceptionsPropagate) {
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Inequalities, EveryVerificationCheckPassesOnASmallRun) {
  for (const auto* e : select_checks("tverify", {})) {
    const CheckReport r = run_check(*e, small(40));
    EXPECT_TRUE(r.pass) << e->name << " worst=" << r.worst_margin << " eq=" << r.max_equality_gap;
    EXPECT_FALSE(r.anchor.empty()) << e->name;
  }
}

TEST(Inequalities, PeierlsFailsWithTheDiagonalTrace) {
  // The check passes with the block-circulant trace and counts the trials in
  // which the f-diagonal trace version is violated.
  const CheckReport r = check_peierls(small(100));
  EXPECT_TRUE(r.pass);
  ASSERT_TRUE(r.stats.count("t_trace_violations"));
  EXPECT_GT(r.stats.at("t_trace_violations"), 0.0);
}

TEST(Inequalities, GoldenThompsonEqualityForCommutingPair) {
  const auto [c, d] = gen_commuting_pair(3, 3, 4);
  const double lhs = bcirc_trace(texp(c + d)).real();
  const double rhs = bcirc_trace(tprod::tprod(texp(c), texp(d))).real();
  EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  // C = D = O.
  EXPECT_NEAR(bcirc_trace(texp(Tensor3(3, 3, 3))).real(), 9.0, 1e-14);
}

TEST(Inequalities, PinchingProperties) {
  const Tensor3 c = gen_clustered_hermitian(3, 3, 2, 2);
  const auto proj = spectral_projectors(c);
  Tensor3 sum(3, 3, 3);
  for (const auto& p : proj) sum += p;
  EXPECT_LT(oracle::rel_err(sum, identity(3, 3)), 1e-10);
  const Tensor3 x = gen_hermitian(3, 3, 9);
  const Tensor3 px = pinch(proj, x);
  // Commutes with C and preserves the trace against C.
  EXPECT_LT((tprod::tprod(c, px) - tprod::tprod(px, c)).frobenius_norm(), 1e-10);
  EXPECT_NEAR(bcirc_trace(tprod::tprod(c, px)).real(), bcirc_trace(tprod::tprod(c, x)).real(), 1e-10);
}

TEST(Inequalities, RelativeEntropyIsNonnegativeAndZeroOnTheDiagonal) {
  const Tensor3 a = gen_tpd(3, 3, 1), b = gen_tpd(3, 3, 2);
  EXPECT_GE(relative_entropy(a, b), -1e-12);
  EXPECT_NEAR(relative_entropy(a, a), 0.0, 1e-11);
}

TEST(Suite, RegistryAndSelection) {
  EXPECT_EQ(select_checks("all", {}).size(), check_registry().size());
  EXPECT_THROW(select_checks("", {"not_a_check"}), std::invalid_argument);
  EXPECT_THROW(select_checks("nope", {}), std::invalid_argument);
  const auto one = select_checks("", {"klein"});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.front()->name, "klein");
  for (const auto& suite : {"tverify", "trand", "tcf"}) EXPECT_FALSE(select_checks(suite, {}).empty());
}
