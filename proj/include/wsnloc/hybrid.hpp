#pragma once

#include <optional>
#include <vector>

#include "wsnloc/array_model.hpp"
#include "wsnloc/channel.hpp"
#include "wsnloc/decorrelation.hpp"
#include "wsnloc/doa_estimators.hpp"
#include "wsnloc/geometry.hpp"
#include "wsnloc/pme.hpp"

namespace wsnloc {

// A node carrying a UCA that measures both the DOA and one RSS per element.
struct HybridNode {
  Position2D center;
  ArrayGeometry geometry;
  std::vector<Position2D> element_positions;

  static HybridNode make(Position2D center, const ArrayGeometry& uca);
};

struct BearingRay {
  Position2D origin;
  Position2D direction;  // unit length

  static BearingRay from_azimuth(Position2D origin, double azimuth);
};

// Point where the ray meets the circle, taking the nearest forward crossing.
// Without a real crossing the ray point closest to the centre is returned.
Position2D ray_circle_point(const BearingRay& ray, Position2D center, double radius);

// Casts the DOA ray from the node centre, intersects it with each
// element-centred circle of radius est_distance and averages the points.
Position2D hybrid_single_node(const HybridNode& node, double doa, const std::vector<RssMeasurement>& element_rss);

struct HybridFbssResult {
  Position2D position;
  double doa = 0.0;            // angle used for fusion
  std::vector<double> all_doas;
};

// Virtual-array mapping, forward/backward smoothing and MUSIC on the smoothed
// virtual array. Among the M recovered angles the one closest to
// `reference_bearing` (typically the bearing of a coarse RSS-only fix) is fused.
HybridFbssResult hybrid_with_fbss(const HybridNode& node, const CMatrix& X, const std::vector<RssMeasurement>& element_rss,
                                  const PmeTransform& pme, int M, double reference_bearing,
                                  std::optional<SmoothingPlan> plan = std::nullopt,
                                  double grid_step = kDefaultGridStep);

enum class FusionEstimator { Ls, Wls };

// Trilaterates from the RSS anchors plus the hybrid centre (last), then
// projects the DOA ray out to the same range and averages both points.
// `model` supplies the WLS weights and is ignored for LS.
Position2D hybrid_anchor_fusion(const HybridNode& hyb, const AnchorSet& rss_anchors,
                                const std::vector<double>& anchor_distances, double hybrid_distance,
                                FusionEstimator estimator, double doa, const ChannelModel& model = {});

// Intersects the LOP of (rss_anchor, d1) and (hybrid centre, d_hyb) with the
// DOA bearing line through the hybrid centre.
Position2D two_lines(const HybridNode& hyb, Position2D rss_anchor, double d1, double d_hyb, double doa);

}  // namespace wsnloc
