#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wsnloc/errors.hpp"
#include "wsnloc/pme.hpp"

using namespace wsnloc;

namespace {

struct BesselCase {
  int p;
  double z;
  double expected;  // 40-digit arbitrary-precision reference, rounded
};

// Reference values from an arbitrary-precision library; the series branch is
// exercised below zeta = 12 and the backward recurrence above it.
const BesselCase kBessel[] = {
    {1, 1.0, 0.44005058574493351596},
    {0, 1.0, 0.76519768655796655145},
    {3, 1.0699, 0.023740603483191424613},
    {3, 2.0, 0.1289432494744020511},
    {2, 3.0, 0.48609126058589107691},
    {0, 11.9, 0.02504944169958964508},
    {1, 11.9, -0.22898324966192405505},
    {7, 11.9, -0.15520692222578970212},
    {0, 12.5, 0.14688405470042110231},
    {2, 12.5, -0.17336146343878265726},
    {5, 30.0, -0.14324029551207707699},
    {20, 30.0, 0.0048310199934040645386},
    {0, 100.0, 0.019985850304223122424},
    {64, 100.0, 0.039985069452918338196},
    {10, 128.0, 0.025537063465075615689},
    {40, 128.0, 0.00013588474890537654584},
    {64, 0.5, 2.3138013161941938442e-128},
};

}  // namespace

TEST(Bessel, MatchesReferenceValues) {
  for (const auto& c : kBessel) {
    const double got = bessel_j(c.p, c.z);
    EXPECT_NEAR(got, c.expected, 1e-12 * std::max(1.0, std::abs(c.expected)) + 1e-13 * std::abs(c.expected))
        << "J_" << c.p << "(" << c.z << ")";
    EXPECT_NEAR(got / c.expected, 1.0, 1e-9) << "J_" << c.p << "(" << c.z << ")";
  }
}

TEST(Bessel, NegativeOrderSymmetry) {
  for (int p = 1; p <= 10; ++p) {
    const double sign = p % 2 ? -1.0 : 1.0;
    EXPECT_DOUBLE_EQ(bessel_j(-p, 7.3), sign * bessel_j(p, 7.3));
  }
}

TEST(Bessel, ThreeTermRecurrence) {
  for (double z : {0.7, 5.0, 11.99, 12.01, 40.0, 110.0}) {
    for (int p = 1; p < 30; ++p) {
      const double lhs = bessel_j(p - 1, z) + bessel_j(p + 1, z);
      const double rhs = 2.0 * p / z * bessel_j(p, z);
      EXPECT_NEAR(lhs, rhs, 1e-12) << "p=" << p << " z=" << z;
    }
  }
}

TEST(Bessel, OutOfRange) {
  EXPECT_THROW(bessel_j(65, 1.0), Error);
  EXPECT_THROW(bessel_j(0, 128.5), Error);
  EXPECT_THROW(bessel_j(0, -1.0), Error);
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(3, 0.0), 0.0);
}

TEST(Pme, MaxModeFromRadius) {
  EXPECT_EQ(max_mode(0.5, 1.0), 3);
  EXPECT_EQ(max_mode(1.0 / (2 * std::numbers::pi), 1.0), 1);
}

TEST(Pme, DftRowsAreScaledOrthonormal) {
  const auto g = ArrayGeometry::uca(16, 0.5, std::numbers::pi / 2, 1.0);
  const PmeTransform t = build_transform(g);
  const int rows = 2 * t.h + 1;
  EXPECT_LT((t.F * t.F.adjoint() - CMatrix::Identity(rows, rows) / 16.0).norm(), 1e-14);
}

TEST(Pme, WhitenedTransformHasOrthonormalRows) {
  for (int N : {9, 12, 16, 24}) {
    for (double r : {0.35, 0.5, 0.7}) {
      auto g = ArrayGeometry::uca(N, r, std::numbers::pi / 2, 1.0);
      PmeTransform t;
      try {
        t = build_transform(g);
      } catch (const Error& e) {
        continue;  // a Bessel null at this radius is a legitimate refusal
      }
      const int rows = 2 * t.h + 1;
      EXPECT_LT((t.Tw * t.Tw.adjoint() - CMatrix::Identity(rows, rows)).norm(), 1e-10) << "N=" << N << " r=" << r;
    }
  }
}

TEST(Pme, TransformedSteeringIsVirtualUla) {
  // With a ring much larger than 2h the aliased modes J_{p +- N} are negligible.
  const auto g = ArrayGeometry::uca(24, 0.5, std::numbers::pi / 2, 1.0);
  const PmeTransform t = build_transform(g);
  ASSERT_EQ(t.h, 3);
  const ArrayGeometry v = t.virtual_geometry();
  for (double theta : {-2.5, -0.4, 0.0, 1.1, 3.0}) {
    const CVector mapped = t.Tv * uca_steering(theta, g);
    EXPECT_LT((mapped - vula_steering(theta, v)).norm(), 1e-9) << theta;
  }
}

TEST(Pme, OverrideMustLeaveRoomForModes) {
  const auto g = ArrayGeometry::uca(6, 0.5, std::numbers::pi / 2, 1.0, 3);
  try {
    build_transform(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientElements);
  }
}

TEST(Pme, AutomaticOrderIsClamped) {
  const auto g = ArrayGeometry::uca(6, 0.8, std::numbers::pi / 2, 1.0);
  const PmeTransform t = build_transform(g);
  EXPECT_TRUE(t.clamped);
  EXPECT_EQ(t.h, 2);
}

TEST(Pme, BesselNullIsRejected) {
  // J_0 vanishes at zeta = 2.404825557695773.
  const double r = 2.404825557695773 / (2 * std::numbers::pi);
  const auto g = ArrayGeometry::uca(9, r, std::numbers::pi / 2, 1.0, 1);
  try {
    build_transform(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BesselNearZero);
  }
}

TEST(Pme, ToVulaChecksDimensions) {
  const auto g = ArrayGeometry::uca(9, 0.5, std::numbers::pi / 2, 1.0);
  const PmeTransform t = build_transform(g);
  EXPECT_THROW(to_vula(CMatrix::Zero(8, 3), t, false), Error);
  EXPECT_EQ(to_vula(CMatrix::Zero(9, 3), t, true).rows(), 7);
}
