#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tprodlab/algebra.hpp"
#include "tprodlab/dft.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/spectral.hpp"

using namespace tprod;

namespace {

Tube random_tube(Index p, std::uint64_t seed, bool complex = false) {
  Rng rng(seed);
  Tube t(p);
  for (Index k = 0; k < p; ++k) t[k] = complex ? rng.complex_normal() : cplx(rng.normal(), 0.0);
  return t;
}

}  // namespace

TEST(Tensor, StorageIsSliceMajorRowMajor) {
  std::vector<cplx> e(2 * 3 * 2);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<double>(i);
  const Tensor3 t(2, 3, 2, e);
  EXPECT_EQ(t(0, 1, 0), cplx(1.0));
  EXPECT_EQ(t(1, 0, 0), cplx(3.0));
  EXPECT_EQ(t(0, 0, 1), cplx(6.0));
  EXPECT_EQ(t(1, 2, 1), cplx(11.0));
}

TEST(Tensor, ShapeMismatchThrows) {
  EXPECT_THROW(tprod::tprod(Tensor3(2, 3, 2), Tensor3(2, 2, 2)), DimensionError);
  EXPECT_THROW(Tensor3(2, 2, 2) += Tensor3(2, 2, 3), DimensionError);
}

TEST(Dft, MatchesFourierMatrix) {
  for (Index p : {1, 2, 3, 4, 5, 8}) {
    const Tube x = random_tube(p, 11 + static_cast<std::uint64_t>(p), true);
    const Vector ref = oracle::fourier(p) * x.values();
    EXPECT_LT((dft(x.values()) - ref).norm(), 1e-12 * (1.0 + ref.norm())) << "p=" << p;
    EXPECT_LT((idft(dft(x.values())) - x.values()).norm(), 1e-13 * (1.0 + x.norm()));
  }
}

TEST(Dft, MirrorFrequency) {
  EXPECT_EQ(mirror_frequency(0, 5), 0);
  EXPECT_EQ(mirror_frequency(1, 5), 4);
  EXPECT_EQ(mirror_frequency(2, 4), 2);
}

TEST(Algebra, BcircMatchesOracleAndInverts) {
  const Tensor3 c = gen_complex_tensor(2, 3, 4, 5);
  const Matrix b = bcirc(c);
  EXPECT_EQ((b - oracle::bcirc(c)).norm(), 0.0);
  const Tensor3 back = bcirc_inv(b, 2, 3, 4);
  for (Index k = 0; k < 4; ++k) EXPECT_EQ((back.slice(k) - c.slice(k)).norm(), 0.0);
}

TEST(Algebra, FoldUnfoldRoundtrip) {
  const Tensor3 c = gen_tensor(3, 2, 4, 6);
  EXPECT_EQ(oracle::rel_err(fold(unfold(c), 4), c), 0.0);
}

TEST(Algebra, TprodFastAndDenseAgreeWithOracle) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const Index m = 1 + static_cast<Index>(rng.below(4)), n = 1 + static_cast<Index>(rng.below(4));
    const Index q = 1 + static_cast<Index>(rng.below(4)), p = 1 + static_cast<Index>(rng.below(5));
    const bool complex = s % 2 == 1;
    const Tensor3 a = complex ? gen_complex_tensor(m, n, p, 2 * s) : gen_tensor(m, n, p, 2 * s);
    const Tensor3 b = complex ? gen_complex_tensor(n, q, p, 2 * s + 1) : gen_tensor(n, q, p, 2 * s + 1);
    const Tensor3 ref = oracle::tprod(a, b);
    EXPECT_LT(oracle::rel_err(tprod::tprod(a, b), ref), 1e-12);
    EXPECT_LT(oracle::rel_err(tprod_dense(a, b), ref), 1e-13);
  }
}

TEST(Algebra, TprodOfRealInputsIsReal) {
  const Tensor3 c = tprod::tprod(gen_tensor(3, 3, 4, 1), gen_tensor(3, 3, 4, 2));
  EXPECT_TRUE(c.is_real());
}

TEST(Algebra, IdentityAndAssociativity) {
  const Tensor3 a = gen_complex_tensor(3, 3, 3, 1), b = gen_complex_tensor(3, 3, 3, 2),
                c = gen_complex_tensor(3, 3, 3, 3);
  EXPECT_LT(oracle::rel_err(tprod::tprod(identity(3, 3), a), a), 1e-14);
  EXPECT_LT(oracle::rel_err(tprod::tprod(tprod::tprod(a, b), c), tprod::tprod(a, tprod::tprod(b, c))), 1e-12);
}

TEST(Algebra, HermitianTransposeIsBcircAdjoint) {
  const Tensor3 c = gen_complex_tensor(2, 3, 4, 9);
  EXPECT_LT((bcirc(herm_transpose(c)) - oracle::bcirc(c).adjoint()).norm(), 1e-15);
  EXPECT_LT((bcirc(transpose(c)) - oracle::bcirc(c).transpose()).norm(), 1e-15);
  // (C D)^H = D^H C^H.
  const Tensor3 d = gen_complex_tensor(3, 2, 4, 10);
  EXPECT_LT(oracle::rel_err(herm_transpose(tprod::tprod(c, d)), tprod::tprod(herm_transpose(d), herm_transpose(c))),
            1e-12);
}

TEST(Algebra, Traces) {
  const Tensor3 c = gen_complex_tensor(3, 3, 4, 4);
  cplx diag_sum = 0.0;
  for (Index k = 0; k < 4; ++k)
    for (Index i = 0; i < 3; ++i) diag_sum += c(i, i, k);
  EXPECT_LT(std::abs(trace(c) - diag_sum), 1e-13);
  EXPECT_LT(std::abs(bcirc_trace(c) - oracle::bcirc(c).trace()), 1e-12);
  EXPECT_LT(std::abs(trace(identity(3, 4)) - 3.0), 1e-15);
  EXPECT_LT(std::abs(bcirc_trace(identity(3, 4)) - 12.0), 1e-15);
}

TEST(Algebra, OdotFamilyMatchesCirculantOracle) {
  for (Index p : {1, 2, 3, 4, 6}) {
    const Tube a = random_tube(p, 100 + static_cast<std::uint64_t>(p), true);
    const Tube b = random_tube(p, 200 + static_cast<std::uint64_t>(p), true);
    EXPECT_LT(oracle::rel_err(odot(a, b), oracle::first_column(oracle::circ(a) * oracle::circ(b))), 1e-13);
    EXPECT_LT((circ(a) - oracle::circ(a)).norm(), 1e-15);
    const Vector q = oracle::circ(b).fullPivLu().solve(a.values());
    EXPECT_LT(oracle::rel_err(odot_div(a, b), Tube(q)), 1e-10);
    const Tube small = 0.5 * random_tube(p, 300 + static_cast<std::uint64_t>(p), true);
    EXPECT_LT(oracle::rel_err(odot_exp(small), oracle::first_column(oracle::exp_series(oracle::circ(small)))), 1e-12);
  }
}

TEST(Algebra, OdotDivRejectsSingularDivisor) {
  // (1, 1) has DFT (2, 0).
  EXPECT_THROW(odot_div(Tube{1.0, 0.0}, Tube{1.0, 1.0}), DomainError);
}

TEST(Algebra, LateralProducts) {
  const Tensor3 c = gen_complex_tensor(3, 3, 4, 1);
  const LateralMatrix x = LateralMatrix::from_tensor(gen_complex_tensor(3, 1, 4, 2));
  const LateralMatrix y = LateralMatrix::from_tensor(gen_complex_tensor(3, 1, 4, 3));
  const Tube d = random_tube(4, 4, true);
  // C star X through the oracle.
  const Tensor3 cx = oracle::tprod(c, x.to_tensor());
  EXPECT_LT(oracle::rel_err(tensor_times_matrix(c, x).to_tensor(), cx), 1e-12);
  // X^H star Y as a tube.
  const Tensor3 ip = oracle::from_bcirc(oracle::bcirc(x.to_tensor()).adjoint() * oracle::bcirc(y.to_tensor()), 1, 1, 4);
  EXPECT_LT(oracle::rel_err(lateral_inner(x, y), ip.tube(0, 0)), 1e-12);
  // d o X = X circ(d).
  EXPECT_LT((dprod(d, x).matrix() - x.matrix() * oracle::circ(d)).norm(), 1e-12 * (1.0 + x.frobenius_norm()));
}

TEST(Algebra, DeterminantMatchesBcircAndIsMultiplicative) {
  const Tensor3 a = gen_complex_tensor(3, 3, 3, 21), b = gen_complex_tensor(3, 3, 3, 22);
  const cplx ref = oracle::bcirc(a).determinant();
  EXPECT_LT(std::abs(tdet(a) - ref), 1e-9 * std::abs(ref));
  EXPECT_LT(std::abs(tdet(tprod::tprod(a, b)) - tdet(a) * tdet(b)), 1e-9 * std::abs(tdet(a) * tdet(b)));
  EXPECT_LT(std::abs(tdet(identity(3, 3)) - 1.0), 1e-14);
}

TEST(Algebra, DilationSpectrumIsPlusMinusSingularValues) {
  const Tensor3 c = gen_complex_tensor(2, 3, 3, 5);
  const Tensor3 h = dilation(c);
  EXPECT_TRUE(is_hermitian(h, 1e-14));
  Eigen::VectorXd ev = oracle::eigenvalues(h);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(oracle::bcirc(c)).singularValues();
  std::vector<double> expect;
  for (Index i = 0; i < sv.size(); ++i) {
    expect.push_back(sv[i]);
    expect.push_back(-sv[i]);
  }
  // bcirc(H) is (m+n)p square; the extra |m - n| p eigenvalues are zero.
  while (static_cast<Index>(expect.size()) < ev.size()) expect.push_back(0.0);
  std::sort(expect.begin(), expect.end());
  for (Index i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expect[static_cast<std::size_t>(i)], 1e-12);
}
