#include <gtest/gtest.h>

#include "oracles.hpp"
#include "schauder/errors.hpp"
#include "schauder/linalg.hpp"
#include "schauder/random.hpp"

using namespace schauder;

namespace {

CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const CMatrix a = random_gaussian_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST(OracleSelfCheck, JacobiEigMatchesClosedForm2x2) {
  CMatrix s(2, 2);
  s << 1.5, 0.5, 0.5, 0.5;
  const auto e = oracle::jacobi_eig(s);
  EXPECT_NEAR(e.values[0], 1 - 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e.values[1], 1 + 1 / std::sqrt(2.0), 1e-14);
}

TEST(OracleSelfCheck, JacobiReconstructsComplexHermitian) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = random_hermitian(5, rng);
    const auto e = oracle::jacobi_eig(h);
    RVector vals(5);
    for (int i = 0; i < 5; ++i) vals(i) = e.values[i];
    const CMatrix back = e.vectors * vals.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((back - h).norm(), 1e-12);
    EXPECT_LT((e.vectors.adjoint() * e.vectors - CMatrix::Identity(5, 5)).norm(), 1e-12);
  }
}

TEST(OracleSelfCheck, HestenesSvdReconstructs) {
  Rng rng(4);
  const CMatrix a = random_gaussian_matrix(4, 3, rng);
  const auto s = oracle::jacobi_svd(a);
  CMatrix back = CMatrix::Zero(4, 3);
  for (int j = 0; j < 3; ++j) back += s.sigma[j] * s.u.col(j) * s.v.col(j).adjoint();
  EXPECT_LT((back - a).norm(), 1e-12);
}

TEST(HermitianExtremeEig, Identity) {
  const auto e = linalg::hermitian_extreme_eig(CMatrix::Identity(3, 3));
  EXPECT_NEAR(e.lambda_min, 1, 1e-15);
  EXPECT_NEAR(e.lambda_max, 1, 1e-15);
  EXPECT_NEAR(e.v_max.norm(), 1, 1e-14);
  EXPECT_NEAR(e.v_min.norm(), 1, 1e-14);
}

TEST(HermitianExtremeEig, Diagonal) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 1) = 2;
  const auto e = linalg::hermitian_extreme_eig(m);
  EXPECT_DOUBLE_EQ(e.lambda_min, 0);
  EXPECT_DOUBLE_EQ(e.lambda_max, 2);
  EXPECT_NEAR(std::abs(e.v_min(0)), 1, 1e-15);
  EXPECT_NEAR(std::abs(e.v_max(1)), 1, 1e-15);
}

TEST(HermitianExtremeEig, TwoByTwoClosedForm) {
  CMatrix s(2, 2);
  s << 1.5, 0.5, 0.5, 0.5;
  // trace 2, determinant 1/2: 1 +- sqrt(1 - 1/2)
  const auto e = linalg::hermitian_extreme_eig(s);
  EXPECT_NEAR(e.lambda_max, 1 + std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(e.lambda_min, 1 - std::sqrt(0.5), 1e-14);
}

TEST(HermitianExtremeEig, MatchesJacobiOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 1 + trial % 7;
    const CMatrix h = random_hermitian(n, rng);
    const auto e = linalg::hermitian_extreme_eig(h);
    const auto o = oracle::jacobi_eig(h);
    EXPECT_NEAR(e.lambda_min, o.values.front(), 1e-12);
    EXPECT_NEAR(e.lambda_max, o.values.back(), 1e-12);
    EXPECT_LT((h * e.v_max - e.lambda_max * e.v_max).norm(), 1e-12);
  }
}

TEST(HermitianExtremeEig, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(linalg::hermitian_extreme_eig(m), std::invalid_argument);
  EXPECT_THROW(linalg::hermitian_extreme_eig(CMatrix(2, 3)), std::invalid_argument);
}

TEST(HermitianExtremeEig, RejectsNonFinite) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_ANY_THROW(linalg::hermitian_extreme_eig(m));
}

TEST(HermitianExtremeEig, RayleighSandwich) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = random_hermitian(4, rng);
    const auto e = linalg::hermitian_extreme_eig(h);
    for (int r = 0; r < 20; ++r) {
      const CVector z = random_unit_vector(4, rng);
      const double q = inner(CVector(h * z), z).real();
      EXPECT_GE(q, e.lambda_min - 1e-12);
      EXPECT_LE(q, e.lambda_max + 1e-12);
    }
  }
}

TEST(TopSingularTriplet, ZeroMatrix) {
  EXPECT_EQ(linalg::top_singular_triplet(CMatrix::Zero(3, 3)).sigma, 0.0);
}

TEST(TopSingularTriplet, RankOne) {
  CVector x(3), y(2);
  x << 2, 0, 0;
  y << 0, 3;
  const auto t = linalg::top_singular_triplet(CMatrix(x * y.adjoint()));
  EXPECT_NEAR(t.sigma, 6, 1e-14);
  // singular vectors are determined up to a common phase
  const Complex phase = t.u(0) / std::abs(t.u(0));
  EXPECT_LT((t.u - phase * x / 2.0).norm(), 1e-14);
  EXPECT_LT((t.v - phase * y / 3.0).norm(), 1e-14);
}

TEST(TopSingularTriplet, MatchesHestenesOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(4, 4, rng);
    const auto t = linalg::top_singular_triplet(a);
    EXPECT_NEAR(t.sigma, oracle::op_norm(a), 1e-12 * t.sigma);
    EXPECT_LT((a * t.v - t.sigma * t.u).norm(), 1e-12 * t.sigma);
  }
}

TEST(TraceNorm, Identity) { EXPECT_NEAR(linalg::trace_norm(CMatrix::Identity(4, 4)), 4, 1e-14); }

TEST(TraceNorm, RankOneOnes) { EXPECT_NEAR(linalg::trace_norm(CMatrix::Ones(2, 2)), 2, 1e-14); }

TEST(TraceNorm, MatchesHestenesOracle) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(3, 3, rng);
    EXPECT_NEAR(linalg::trace_norm(a), oracle::trace_norm(a), 1e-12);
  }
}

TEST(TraceNorm, RejectsNonSquare) { EXPECT_THROW(linalg::trace_norm(CMatrix::Ones(2, 3)), std::invalid_argument); }

TEST(TraceNorm, DominatesOperatorNormWithEqualityAtRankOne) {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(4, 4, rng);
    EXPECT_GT(linalg::trace_norm(a), linalg::operator_norm(a));
    const CMatrix r1 = random_gaussian_vector(4, rng) * random_gaussian_vector(4, rng).adjoint();
    EXPECT_NEAR(linalg::trace_norm(r1), linalg::operator_norm(r1), 1e-12 * linalg::operator_norm(r1));
  }
}

TEST(TraceNorm, UnitaryInvariant) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(4, 4, rng);
    const CMatrix u = random_unitary(4, rng), w = random_unitary(4, rng);
    EXPECT_NEAR(linalg::trace_norm(CMatrix(u * a * w)), linalg::trace_norm(a), 1e-12);
  }
}

TEST(PsdSqrt, IdentityAndDiagonal) {
  EXPECT_LT((linalg::psd_sqrt(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm(), 1e-15);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 4;
  m(1, 1) = 9;
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 2;
  expect(1, 1) = 3;
  EXPECT_LT((linalg::psd_sqrt(m) - expect).norm(), 1e-14);
}

TEST(PsdSqrt, GramMatrixSquaresBack) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_gaussian_matrix(4, 4, rng);
    const CMatrix g = a.adjoint() * a;
    const CMatrix r = linalg::psd_sqrt(g);
    EXPECT_LT((r * r - g).norm(), 1e-10);
    EXPECT_TRUE(linalg::is_hermitian(r));
    // the square root's spectrum is the square root of the oracle spectrum
    const auto eg = oracle::jacobi_eig(g);
    const auto er = oracle::jacobi_eig(r);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(er.values[i], std::sqrt(std::max(eg.values[i], 0.0)), 1e-7);
  }
}

TEST(PsdSqrt, ScalesLikeSqrt) {
  Rng rng(18);
  const CMatrix a = random_gaussian_matrix(3, 3, rng);
  const CMatrix g = a.adjoint() * a;
  for (double c : {1e-3, 0.5, 7.0, 1e4})
    EXPECT_LT((linalg::psd_sqrt(CMatrix(c * g)) - std::sqrt(c) * linalg::psd_sqrt(g)).norm(),
              1e-10 * std::sqrt(c) * g.norm());
}

TEST(PsdSqrt, ClampsTinyNegativesRejectsLargeOnes) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1e-13;
  const CMatrix r = linalg::psd_sqrt(m, 1e-10);
  EXPECT_EQ(r(1, 1), Complex(0));
  m(1, 1) = -1e-3;
  EXPECT_THROW(linalg::psd_sqrt(m, 1e-10), NotPsdError);
}
