#include <gtest/gtest.h>

#include "schauder/frames.hpp"
#include "schauder/generators.hpp"
#include "schauder/linalg.hpp"

using namespace schauder;

TEST(FramePair, RejectsBadInput) {
  EXPECT_THROW(FramePair(CMatrix(2, 0), CMatrix(2, 0)), std::invalid_argument);
  EXPECT_THROW(FramePair(CMatrix::Ones(2, 2), CMatrix::Ones(3, 2)), std::invalid_argument);
  CMatrix zero_col = CMatrix::Ones(2, 2);
  zero_col.col(1).setZero();
  EXPECT_THROW(FramePair(zero_col, CMatrix::Ones(2, 2)), std::invalid_argument);
  CMatrix nan = CMatrix::Ones(2, 2);
  nan(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(FramePair(CMatrix::Ones(2, 2), nan), std::invalid_argument);
}

TEST(FrameOperator, OrthonormalBasisGivesIdentity) {
  EXPECT_LT((frame_operator(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm(), 1e-15);
  Rng rng(1);
  const CMatrix u = random_unitary(4, rng);
  EXPECT_LT((frame_operator(u) - CMatrix::Identity(4, 4)).norm(), 1e-13);
}

TEST(FrameOperator, RepeatedVector) {
  CMatrix v = CMatrix::Zero(2, 2);
  v(0, 0) = v(0, 1) = 1;
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 2;
  EXPECT_LT((frame_operator(v) - expect).norm(), 1e-15);
}

TEST(FrameOperator, QuadraticFormIsDirectSum) {
  Rng rng(2);
  const CMatrix v = random_gaussian_matrix(3, 7, rng);
  const CMatrix s = frame_operator(v);
  for (int r = 0; r < 100; ++r) {
    const CVector u = random_gaussian_vector(3, rng);
    double direct = 0;
    for (Eigen::Index k = 0; k < 7; ++k) direct += std::norm(inner(u, CVector(v.col(k))));
    EXPECT_NEAR(inner(CVector(s * u), u).real(), direct, 1e-12 * (1 + direct));
  }
}

TEST(FrameOperator, SpanOverloadAndMismatch) {
  std::vector<CVector> vs{CVector::Ones(2), CVector::Ones(2)};
  EXPECT_LT((frame_operator(std::span<const CVector>(vs)) - 2.0 * CMatrix::Ones(2, 2)).norm(), 1e-15);
  vs.push_back(CVector::Ones(3));
  EXPECT_THROW(frame_operator(std::span<const CVector>(vs)), std::invalid_argument);
}

TEST(FrameBounds, Examples) {
  const auto onb = bessel_and_frame_bounds(CMatrix::Identity(3, 3));
  EXPECT_NEAR(onb.lower, 1, 1e-14);
  EXPECT_NEAR(onb.upper, 1, 1e-14);
  EXPECT_TRUE(onb.is_frame);

  CMatrix v = CMatrix::Zero(2, 2);
  v(0, 0) = v(0, 1) = 1;
  const auto deg = bessel_and_frame_bounds(v);
  EXPECT_NEAR(deg.lower, 0, 1e-15);
  EXPECT_NEAR(deg.upper, 2, 1e-14);
  EXPECT_FALSE(deg.is_frame);

  Rng rng(3);
  const auto u = gen::onb_union(3, rng);
  const auto two = bessel_and_frame_bounds(u.xs());
  EXPECT_NEAR(two.lower, 2, 1e-12);
  EXPECT_NEAR(two.upper, 2, 1e-12);
}

TEST(FrameBounds, UnitaryInvariant) {
  Rng rng(4);
  const CMatrix v = random_gaussian_matrix(3, 5, rng);
  const CMatrix u = random_unitary(3, rng);
  EXPECT_NEAR(bessel_and_frame_bounds(CMatrix(u * v)).upper, bessel_and_frame_bounds(v).upper, 1e-12);
}

TEST(FrameBounds, BesselBoundConvexInSquaredWeights) {
  Rng rng(5);
  std::uniform_real_distribution<double> unif(0.1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix v = random_gaussian_matrix(3, 5, rng);
    RVector a(5), b(5);
    for (int k = 0; k < 5; ++k) {
      a(k) = unif(rng);
      b(k) = unif(rng);
    }
    auto c_of = [&](const RVector& w2) {
      return bessel_and_frame_bounds(CMatrix(v * w2.cwiseSqrt().cast<Complex>().asDiagonal())).upper;
    };
    EXPECT_LE(c_of((a + b) / 2), (c_of(a) + c_of(b)) / 2 + 1e-12);
  }
}

TEST(PairOperator, Examples) {
  EXPECT_LT((pair_operator(gen::orthonormal(3)) - CMatrix::Identity(3, 3)).norm(), 1e-15);
  CMatrix x = CMatrix::Zero(2, 1), y = CMatrix::Zero(2, 1);
  x(0, 0) = 2;
  y(1, 0) = 1;
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 1) = 2;
  EXPECT_LT((pair_operator(FramePair(x, y)) - expect).norm(), 1e-15);
}

TEST(PairOperator, CanonicalDualIsIdentity) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = gen::canonical_dual(6, 3, rng);
    // S^{-1} recomputed independently from the generator
    const CMatrix s = frame_operator(pair.xs());
    const CMatrix ys = s.inverse() * pair.xs();
    EXPECT_LT((pair.ys() - ys).norm(), 1e-10);
    EXPECT_LT(schauder_deviation(pair), 1e-10);
    EXPECT_TRUE(is_schauder_identity(pair));
  }
}

TEST(PairOperator, InvariantUnderReparameterization) {
  Rng rng(7);
  const auto pair = gen::gaussian(5, 3, rng);
  const auto mangled = gen::mangle(pair, 1e-3, 1e3, rng);
  EXPECT_LT((pair_operator(pair) - pair_operator(mangled)).norm(), 1e-12 * pair_operator(pair).norm());
}

TEST(IsSchauderIdentity, Examples) {
  EXPECT_TRUE(is_schauder_identity(gen::orthonormal(3)));
  CMatrix x = CMatrix::Identity(3, 3);
  x(0, 0) = 2;
  EXPECT_FALSE(is_schauder_identity(FramePair(x, CMatrix::Identity(3, 3))));
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = gen::mangle(gen::canonical_dual(5, 3, rng), 1e-3, 1e3, rng);
    EXPECT_TRUE(is_schauder_identity(pair));
  }
}

TEST(FramePair, ReparameterizedAndRotated) {
  Rng rng(9);
  const auto pair = gen::gaussian(3, 2, rng);
  CVector alpha(3);
  alpha << Complex(2, 1), Complex(0, -3), 0.5;
  const auto r = pair.reparameterized(alpha);
  for (Eigen::Index k = 0; k < 3; ++k) {
    EXPECT_LT((r.x(k) - alpha(k) * pair.x(k)).norm(), 1e-15);
    EXPECT_LT((r.y(k) - pair.y(k) / std::conj(alpha(k))).norm(), 1e-15);
  }
  const CMatrix u = random_unitary(2, rng);
  const auto rot = pair.rotated(u);
  EXPECT_LT((rot.xs() - u * pair.xs()).norm(), 1e-15);
  EXPECT_THROW(pair.reparameterized(CVector(CVector::Zero(3))), std::invalid_argument);
}
