#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wsnloc/array_model.hpp"
#include "wsnloc/decorrelation.hpp"
#include "wsnloc/doa_estimators.hpp"
#include "wsnloc/errors.hpp"

using namespace wsnloc;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

int numerical_rank(const CMatrix& R, double rel = 1e-8) {
  const HermEig e = herm_eig(R);
  const double thr = rel * R.trace().real();
  int r = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) r += e.values[i] > thr;
  return r;
}

SourceSet coherent_six() {
  SourceSet s;
  s.azimuths = {-50 * kDeg, -30 * kDeg, -10 * kDeg, 5 * kDeg, 25 * kDeg, 45 * kDeg};
  s.amplitudes = {1.0, 0.9, 0.8, 1.0, 0.85, 0.95};
  s.coherent = true;
  return s;
}

void expect_psd(const CMatrix& R) {
  EXPECT_TRUE(is_hermitian(R, 1e-12));
  EXPECT_GT(herm_eig(R).values.minCoeff(), -1e-10 * R.trace().real());
}

}  // namespace

TEST(Plan, Layout) {
  const SmoothingPlan p = make_plan(12, 7);
  EXPECT_EQ(p.subarray_len, 7);
  EXPECT_EQ(p.subarray_count, 6);
}

TEST(Plan, DefaultIsSmallestValid) {
  EXPECT_EQ(default_plan(12, 6, false).subarray_len, 7);
  EXPECT_EQ(default_plan(9, 6, true).subarray_len, 7);
  EXPECT_EQ(default_plan(8, 2, false).subarray_len, 3);
}

TEST(Plan, ForwardOnlyCannotResolveSixAtNine) {
  EXPECT_THROW(default_plan(9, 6, false), Error);
  for (int p = 1; p <= 9; ++p) {
    try {
      validate_plan(make_plan(9, p), 9, 6, false);
      FAIL() << "p=" << p << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidPlan);
    }
  }
}

TEST(Fss, SingleSubarrayIsIdentityOperation) {
  const auto g = ArrayGeometry::ula(5, 0.5, 1.0);
  SourceSet s{{10 * kDeg}, {1.0}, false};
  const CMatrix R = analytic_covariance(g, s, 0.1);
  EXPECT_LT((fss(R, make_plan(5, 5), 1) - R).norm(), 1e-15);
}

TEST(Fss, RestoresRankSixAtTwelve) {
  const auto g = ArrayGeometry::ula(12, 0.5, 1.0);
  const CMatrix R = analytic_covariance(g, coherent_six(), 0.0);
  EXPECT_EQ(numerical_rank(R), 1);
  const CMatrix S = fss(R, make_plan(12, 7), 6);
  EXPECT_EQ(numerical_rank(S), 6);
  expect_psd(S);
}

TEST(Fbss, RestoresRankSixAtNine) {
  const auto g = ArrayGeometry::ula(9, 0.5, 1.0);
  const CMatrix R = analytic_covariance(g, coherent_six(), 0.0);
  const CMatrix S = fbss(R, make_plan(9, 7), 6);
  EXPECT_EQ(numerical_rank(S), 6);
  expect_psd(S);
}

TEST(Fbss, RealDiagonalUnchanged) {
  CMatrix R = CMatrix::Zero(4, 4);
  R.diagonal() << 2.0, 2.0, 2.0, 2.0;
  EXPECT_LT((fbss(R, make_plan(4, 4), 1) - R).norm(), 1e-15);
}

TEST(Fbss, UncorrelatedSignalSubspaceMatchesFss) {
  const auto g = ArrayGeometry::ula(8, 0.5, 1.0);
  SourceSet s{{-25 * kDeg, 15 * kDeg}, {1.0, 0.8}, false};
  const CMatrix R = analytic_covariance(g, s, 0.0);
  const SmoothingPlan plan = make_plan(8, 5);
  const CMatrix Vf = eig_split(fss(R, plan, 2), 2).Vs;
  const CMatrix Vb = eig_split(fbss(R, plan, 2), 2).Vs;
  // Cosines of the principal angles are the singular values of Vf^H Vb.
  Eigen::JacobiSVD<CMatrix> svd(Vf.adjoint() * Vb);
  for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(svd.singularValues()[i], 1.0, 1e-12);
}

TEST(Fbss, InvalidPlanForTooManySources) {
  const CMatrix R = CMatrix::Identity(6, 6);
  EXPECT_THROW(fbss(R, make_plan(6, 3), 3), Error);
  EXPECT_THROW(fbss(R, make_plan(6, 6), 4), Error);
}

TEST(Toeplitz, ToeplitzInputUnchanged) {
  const auto g = ArrayGeometry::ula(6, 0.5, 1.0);
  SourceSet s{{-20 * kDeg, 30 * kDeg}, {1.0, 0.5}, false};
  const CMatrix R = analytic_covariance(g, s, 0.2);
  EXPECT_LT((toeplitz_reconstruct(R) - R).norm(), 1e-13);
}

TEST(Toeplitz, StructureFromFirstRow) {
  Rng rng(2);
  CMatrix A(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = rng.complex_normal();
  const CMatrix R = A * A.adjoint();
  const CMatrix T = toeplitz_reconstruct(R);
  EXPECT_TRUE(is_hermitian(T, 1e-14));
  for (int i = 0; i < 5; ++i)
    for (int k = i; k < 5; ++k) EXPECT_EQ(T(i, k), k == i ? cd(R(0, 0).real()) : R(0, k - i));
}

TEST(Toeplitz, RestoresRankSixAtSeven) {
  const auto g = ArrayGeometry::ula(7, 0.5, 1.0);
  const CMatrix T = toeplitz_reconstruct(analytic_covariance(g, coherent_six(), 0.0));
  EXPECT_EQ(numerical_rank(T), 6);
}

TEST(Toeplitz, SignalPowersScaledByAmplitudeSum) {
  // Noiseless coherent pair: the reconstruction equals A diag(alpha rho) A^H
  // with alpha the amplitude sum.
  const auto g = ArrayGeometry::ula(6, 0.5, 1.0);
  SourceSet coh{{-20 * kDeg, 35 * kDeg}, {1.0, 0.6}, true};
  const double alpha = 1.6;
  SourceSet equivalent{coh.azimuths, {std::sqrt(alpha * 1.0), std::sqrt(alpha * 0.6)}, false};
  const CMatrix T = toeplitz_reconstruct(analytic_covariance(g, coh, 0.0));
  const CMatrix expected = analytic_covariance(g, equivalent, 0.0);
  EXPECT_LT((T - expected).norm(), 1e-12);
  const HermEig a = herm_eig(T), b = herm_eig(expected);
  EXPECT_NEAR(a.values[0], b.values[0], 1e-12);
  EXPECT_NEAR(a.values[1], b.values[1], 1e-12);
}

TEST(Toeplitz, SingleSourceEntrywise) {
  const auto g = ArrayGeometry::ula(5, 0.5, 1.0);
  const double rho = 1.3, theta = 22 * kDeg;
  SourceSet s{{theta}, {rho}, true};
  const CMatrix T = toeplitz_reconstruct(analytic_covariance(g, s, 0.0));
  const CVector a = ula_steering(theta, g);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) EXPECT_LT(std::abs(T(i, k) - rho * rho * a[i] * std::conj(a[k])), 1e-13);
}
