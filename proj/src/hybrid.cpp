#include "wsnloc/hybrid.hpp"

#include <cmath>
#include <limits>

#include "wsnloc/errors.hpp"
#include "wsnloc/rss_estimators.hpp"

namespace wsnloc {

HybridNode HybridNode::make(Position2D center, const ArrayGeometry& uca) {
  return {center, uca, uca_element_positions(uca, center)};
}

BearingRay BearingRay::from_azimuth(Position2D origin, double azimuth) {
  return {origin, {std::cos(azimuth), std::sin(azimuth)}};
}

Position2D ray_circle_point(const BearingRay& ray, Position2D center, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::NonPositiveDistance, "circle radius must be positive");
  const Position2D oc = ray.origin - center;
  const Position2D u = ray.direction;
  const double b = u.x * oc.x + u.y * oc.y;
  const double c = oc.x * oc.x + oc.y * oc.y - radius * radius;
  const double disc = b * b - c;

  double t = -b;  // foot of the perpendicular from the centre
  bool have_root = false;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double t1 = -b - root;
    const double t2 = -b + root;
    if (t1 > 0.0) {
      t = t1;
      have_root = true;
    } else if (t2 > 0.0) {
      t = t2;
      have_root = true;
    }
  }
  if (!have_root && !(t > 0.0)) fail(ErrorKind::BehindRay, "circle lies behind the ray origin");
  return ray.origin + t * u;
}

Position2D hybrid_single_node(const HybridNode& node, double doa, const std::vector<RssMeasurement>& element_rss) {
  if (element_rss.size() != node.element_positions.size()) {
    fail(ErrorKind::LengthMismatch, "one RSS measurement per element required");
  }
  const BearingRay ray = BearingRay::from_azimuth(node.center, doa);
  Position2D sum;
  int hits = 0;
  for (std::size_t n = 0; n < element_rss.size(); ++n) {
    try {
      sum = sum + ray_circle_point(ray, node.element_positions[n], element_rss[n].est_distance);
      ++hits;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BehindRay && e.kind() != ErrorKind::NonPositiveDistance) throw;
    }
  }
  if (hits == 0) fail(ErrorKind::AllIntersectionsFailed, "the DOA ray meets no element circle");
  return (1.0 / hits) * sum;
}

HybridFbssResult hybrid_with_fbss(const HybridNode& node, const CMatrix& X, const std::vector<RssMeasurement>& element_rss,
                                  const PmeTransform& pme, int M, double reference_bearing,
                                  std::optional<SmoothingPlan> plan, double grid_step) {
  const int n = 2 * pme.h + 1;
  const SmoothingPlan p = plan ? *plan : default_plan(n, M, true);
  const CMatrix Rv = sample_covariance(to_vula(X, pme, false));
  const CMatrix Rs = fbss(Rv, p, M);
  const MusicResult mr = music(Rs, ArrayGeometry::virtual_ula(p.subarray_len), M, grid_step);

  HybridFbssResult out;
  out.all_doas = mr.estimate.azimuths;
  double best = std::numeric_limits<double>::infinity();
  for (double a : out.all_doas) {
    const double gap = std::abs(wrap_angle(a - reference_bearing));
    if (gap < best) {
      best = gap;
      out.doa = a;
    }
  }
  out.position = hybrid_single_node(node, out.doa, element_rss);
  return out;
}

Position2D hybrid_anchor_fusion(const HybridNode& hyb, const AnchorSet& rss_anchors,
                                const std::vector<double>& anchor_distances, double hybrid_distance,
                                FusionEstimator estimator, double doa, const ChannelModel& model) {
  if (rss_anchors.size() < 2) fail(ErrorKind::LengthMismatch, "need at least two RSS anchors");
  if (rss_anchors.size() != anchor_distances.size()) fail(ErrorKind::LengthMismatch, "one distance per anchor");

  AnchorSet anchors = rss_anchors;
  anchors.push_back(hyb.center);
  std::vector<double> dists = anchor_distances;
  dists.push_back(hybrid_distance);

  const LinearSystem sys = build_lop_system(anchors, dists);
  const Position2D p_tri =
      estimator == FusionEstimator::Ls ? ls_solve(sys) : wls_solve(sys, wls_weights(model, dists));

  const double r = distance(hyb.center, p_tri);
  const Position2D p_doa = hyb.center + r * Position2D{std::cos(doa), std::sin(doa)};
  return 0.5 * (p_tri + p_doa);
}

Position2D two_lines(const HybridNode& hyb, Position2D rss_anchor, double d1, double d_hyb, double doa) {
  const Position2D h = hyb.center;
  const double s = std::sin(doa);
  const double c = std::cos(doa);
  Eigen::Matrix2d C;
  C << h.x - rss_anchor.x, h.y - rss_anchor.y, s, -c;
  Eigen::Vector2d D;
  D << 0.5 * (h.x * h.x + h.y * h.y - rss_anchor.x * rss_anchor.x - rss_anchor.y * rss_anchor.y + d1 * d1 - d_hyb * d_hyb),
      s * h.x - c * h.y;
  if (std::abs(C.determinant()) < 1e-12 * C.norm()) {
    fail(ErrorKind::SingularFusionMatrix, "bearing line is parallel to the line of position");
  }
  const Eigen::Vector2d p = C.partialPivLu().solve(D);
  return {p[0], p[1]};
}

}  // namespace wsnloc
