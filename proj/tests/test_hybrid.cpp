#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wsnloc/errors.hpp"
#include "wsnloc/hybrid.hpp"

using namespace wsnloc;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<RssMeasurement> exact_rss(const std::vector<Position2D>& from, Position2D t) {
  std::vector<RssMeasurement> out;
  for (const auto& p : from) out.push_back({0.0, distance(p, t)});
  return out;
}

HybridNode small_node() {
  return HybridNode::make({15, 15}, ArrayGeometry::uca(8, 0.15, std::numbers::pi / 2, 0.3));
}

}  // namespace

TEST(RayCircle, ForwardCrossing) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 0.0);
  const Position2D p = ray_circle_point(ray, {10, 0}, 3.0);
  EXPECT_NEAR(p.x, 7.0, 1e-14);
  EXPECT_NEAR(p.y, 0.0, 1e-14);
}

TEST(RayCircle, OriginInsideTakesExitPoint) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, std::numbers::pi / 2);
  const Position2D p = ray_circle_point(ray, {0, 1}, 2.0);
  EXPECT_NEAR(p.x, 0.0, 1e-14);
  EXPECT_NEAR(p.y, 3.0, 1e-14);
}

TEST(RayCircle, MissFallsBackToClosestApproach) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 0.0);
  const Position2D p = ray_circle_point(ray, {5, 4}, 1.0);
  EXPECT_NEAR(p.x, 5.0, 1e-14);
  EXPECT_NEAR(p.y, 0.0, 1e-14);
}

TEST(RayCircle, BehindAndBadRadius) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 0.0);
  try {
    ray_circle_point(ray, {-10, 0}, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BehindRay);
  }
  try {
    ray_circle_point(ray, {10, 0}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveDistance);
  }
}

TEST(SingleNode, NoiselessExact) {
  const HybridNode node = small_node();
  for (const Position2D t : {Position2D{25, 22}, Position2D{2, 29}, Position2D{14, 1}}) {
    const Position2D p = hybrid_single_node(node, bearing(node.center, t), exact_rss(node.element_positions, t));
    EXPECT_NEAR(p.x, t.x, 1e-9);
    EXPECT_NEAR(p.y, t.y, 1e-9);
  }
}

TEST(SingleNode, LengthMismatch) {
  const HybridNode node = small_node();
  EXPECT_THROW(hybrid_single_node(node, 0.0, {{0.0, 1.0}}), Error);
}

TEST(SingleNode, NoUsableCircle) {
  const HybridNode node = small_node();
  std::vector<RssMeasurement> rss(8, {0.0, 0.0});
  try {
    hybrid_single_node(node, 0.3, rss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllIntersectionsFailed);
  }
}

TEST(AnchorFusion, NoiselessExactForBothEstimators) {
  const HybridNode node = small_node();
  const AnchorSet anchors{{0, 0}, {30, 0}, {0, 30}};
  const Position2D t{21.5, 8.25};
  std::vector<double> d;
  for (const auto& a : anchors) d.push_back(distance(a, t));
  ChannelModel m;
  m.sigma_db = 2.0;
  for (FusionEstimator est : {FusionEstimator::Ls, FusionEstimator::Wls}) {
    const Position2D p = hybrid_anchor_fusion(node, anchors, d, distance(node.center, t), est, bearing(node.center, t), m);
    EXPECT_NEAR(p.x, t.x, 1e-9);
    EXPECT_NEAR(p.y, t.y, 1e-9);
  }
}

TEST(TwoLines, NoiselessExact) {
  const HybridNode node = small_node();
  const Position2D anchor{0, 30};
  const Position2D t{24, 6};
  const Position2D p = two_lines(node, anchor, distance(anchor, t), distance(node.center, t), bearing(node.center, t));
  EXPECT_NEAR(p.x, t.x, 1e-9);
  EXPECT_NEAR(p.y, t.y, 1e-9);
}

TEST(TwoLines, ParallelGeometryRejected) {
  const HybridNode node = small_node();
  // The LOP between anchor and centre is perpendicular to their joining line;
  // a DOA along that LOP direction makes the system singular.
  const Position2D anchor{15, 0};
  try {
    two_lines(node, anchor, 10.0, 10.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularFusionMatrix);
  }
}

TEST(Fbss, NoiselessCoherentExact) {
  const auto uca = ArrayGeometry::uca(24, 0.55, std::numbers::pi / 2, 1.0);
  const HybridNode node = HybridNode::make({15, 15}, uca);
  const PmeTransform pme = build_transform(uca);
  const double target_bearing = 53.0 * kDeg;
  const Position2D t = node.center + 12.0 * Position2D{std::cos(target_bearing), std::sin(target_bearing)};
  SourceSet src{{target_bearing, 116.6 * kDeg, -32.0 * kDeg}, {1.0, 0.8, 0.6}, true};
  Rng rng(5);
  const CMatrix X = synthesize_snapshots_noise(uca, src, 50, 0.0, rng);
  const HybridFbssResult r =
      hybrid_with_fbss(node, X, exact_rss(node.element_positions, t), pme, 3, target_bearing + 4 * kDeg);
  ASSERT_EQ(r.all_doas.size(), 3u);
  EXPECT_NEAR(r.doa, target_bearing, 1e-8);
  EXPECT_NEAR(r.position.x, t.x, 1e-6);
  EXPECT_NEAR(r.position.y, t.y, 1e-6);
}

TEST(RayCircle, ConcentricCase) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 45 * kDeg);
  const Position2D p = ray_circle_point(ray, {0, 0}, std::sqrt(18.0));
  EXPECT_NEAR(p.x, 3.0, 1e-12);
  EXPECT_NEAR(p.y, 3.0, 1e-12);
}

TEST(RayCircle, OffsetCircleHandSolved) {
  // (t - 5)^2 + 1 = 2 has roots 4 and 6; the nearer one wins.
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 0.0);
  const Position2D p = ray_circle_point(ray, {5, 1}, std::sqrt(2.0));
  EXPECT_NEAR(p.x, 4.0, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(RayCircle, MissWithProjectionAtOriginIsBehind) {
  const BearingRay ray = BearingRay::from_azimuth({0, 0}, 0.0);
  try {
    ray_circle_point(ray, {0, 5}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BehindRay);
  }
}

TEST(SingleNode, FourElementsTargetThreeThree) {
  const HybridNode node = HybridNode::make({0, 0}, ArrayGeometry::uca(4, 0.1, std::numbers::pi / 2, 0.3));
  const Position2D t{3, 3};
  const Position2D p = hybrid_single_node(node, bearing(node.center, t), exact_rss(node.element_positions, t));
  EXPECT_NEAR(p.x, 3.0, 1e-9);
  EXPECT_NEAR(p.y, 3.0, 1e-9);
}

TEST(AnchorFusion, AveragesTrilaterationAndBearingPoint) {
  const HybridNode node = HybridNode::make({0, 0}, ArrayGeometry::uca(4, 0.1, std::numbers::pi / 2, 0.3));
  const AnchorSet anchors{{10, 0}, {0, 10}};
  const Position2D p_ls{4, 4};
  std::vector<double> d;
  for (const auto& a : anchors) d.push_back(distance(a, p_ls));
  const double d_hyb = std::sqrt(32.0);

  // Bearing through p_LS: both halves coincide.
  Position2D p = hybrid_anchor_fusion(node, anchors, d, d_hyb, FusionEstimator::Ls, 45 * kDeg);
  EXPECT_NEAR(p.x, 4.0, 1e-12);
  EXPECT_NEAR(p.y, 4.0, 1e-12);

  // Bearing along +x: p_DOA = (sqrt(32), 0) and the result is the midpoint.
  p = hybrid_anchor_fusion(node, anchors, d, d_hyb, FusionEstimator::Ls, 0.0);
  EXPECT_NEAR(p.x, 0.5 * (4.0 + std::sqrt(32.0)), 1e-12);
  EXPECT_NEAR(p.y, 2.0, 1e-12);
}

TEST(Hybrid, TranslationEquivariance) {
  const auto uca = ArrayGeometry::uca(6, 0.15, std::numbers::pi / 2, 0.3);
  const Position2D v{-7.25, 13.5};
  const Position2D center{10, 4}, anchor_a{1, 20}, anchor_b{22, 18};
  const Position2D t{17, 11};
  // Deliberately inconsistent measurements so the estimate is not the truth.
  const double doa = bearing(center, t) + 0.02;
  const std::vector<double> da{distance(anchor_a, t) * 1.05, distance(anchor_b, t) * 0.97};
  const double d_hyb = distance(center, t) * 1.03;
  ChannelModel m;
  m.sigma_db = 3.0;

  auto run_all = [&](Position2D shift) {
    const HybridNode node = HybridNode::make(center + shift, uca);
    std::vector<RssMeasurement> rss;
    for (std::size_t i = 0; i < node.element_positions.size(); ++i) {
      rss.push_back({0.0, distance(node.element_positions[i], t + shift) * (1.0 + 0.01 * static_cast<double>(i))});
    }
    const AnchorSet anchors{anchor_a + shift, anchor_b + shift};
    return std::vector<Position2D>{
        hybrid_single_node(node, doa, rss),
        hybrid_anchor_fusion(node, anchors, da, d_hyb, FusionEstimator::Ls, doa, m),
        hybrid_anchor_fusion(node, anchors, da, d_hyb, FusionEstimator::Wls, doa, m),
        two_lines(node, anchor_a + shift, da[0], d_hyb, doa),
    };
  };
  const auto base = run_all({0, 0});
  const auto moved = run_all(v);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_GT(distance(base[i], t), 1e-3) << i;
    EXPECT_NEAR(moved[i].x, base[i].x + v.x, 1e-9) << i;
    EXPECT_NEAR(moved[i].y, base[i].y + v.y, 1e-9) << i;
  }
}

TEST(Fbss, UncorrelatedInputMatchesSingleNode) {
  const auto uca = ArrayGeometry::uca(24, 0.55, std::numbers::pi / 2, 1.0);
  const HybridNode node = HybridNode::make({5, 5}, uca);
  const PmeTransform pme = build_transform(uca);
  const Position2D t{20, 14};
  const double theta = bearing(node.center, t);
  SourceSet src{{theta, theta + 70 * kDeg}, {1.0, 0.8}, false};
  Rng rng(8);
  const CMatrix X = synthesize_snapshots(uca, src, 400, 30.0, rng);
  const auto rss = exact_rss(node.element_positions, t);
  const HybridFbssResult r = hybrid_with_fbss(node, X, rss, pme, 2, theta + 2 * kDeg);
  const Position2D direct = hybrid_single_node(node, theta, rss);
  EXPECT_NEAR(r.doa, theta, 0.5 * kDeg);
  EXPECT_LT(distance(r.position, direct), 0.01 * distance(node.center, t));
}
