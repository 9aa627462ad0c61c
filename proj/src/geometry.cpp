#include "wsnloc/geometry.hpp"

#include <cmath>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

double singular_ratio(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0.0;
  return s[s.size() - 1] / s[0];
}

}  // namespace

double distance(Position2D a, Position2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

double norm(Position2D v) { return std::hypot(v.x, v.y); }

double bearing(Position2D from, Position2D to) { return std::atan2(to.y - from.y, to.x - from.x); }

LinearSystem build_lop_system(const AnchorSet& anchors, const std::vector<double>& distances) {
  if (anchors.size() != distances.size()) {
    fail(ErrorKind::LengthMismatch, "anchor and distance counts differ");
  }
  if (anchors.size() < 3) fail(ErrorKind::LengthMismatch, "trilateration needs at least three anchors");
  for (double d : distances) {
    if (!(d > 0.0)) fail(ErrorKind::NonPositiveDistance, "distances must be positive");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      if (distance(anchors[i], anchors[j]) == 0.0) fail(ErrorKind::InvalidArgument, "two anchors coincide");
    }
  }

  const auto rows = static_cast<Eigen::Index>(anchors.size() - 1);
  const Position2D ref = anchors.back();
  const double d_ref = distances.back();
  const double ref_sq = ref.x * ref.x + ref.y * ref.y;

  LinearSystem sys{Eigen::MatrixXd(rows, 2), Eigen::VectorXd(rows)};
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Position2D p = anchors[i];
    sys.A(i, 0) = 2.0 * (ref.x - p.x);
    sys.A(i, 1) = 2.0 * (ref.y - p.y);
    sys.b[i] = distances[i] * distances[i] - d_ref * d_ref - (p.x * p.x + p.y * p.y) + ref_sq;
  }

  if (singular_ratio(sys.A) < 1e-10) fail(ErrorKind::CollinearAnchors, "anchors do not span the plane");
  return sys;
}

Position2D bearing_lines_locate(const AnchorSet& anchors, const std::vector<double>& azimuths) {
  if (anchors.size() != azimuths.size()) fail(ErrorKind::LengthMismatch, "one bearing per anchor required");
  if (anchors.size() < 2) fail(ErrorKind::LengthMismatch, "at least two bearings required");

  // Line through p with direction (cos t, sin t): sin t * x - cos t * y = sin t * px - cos t * py.
  const auto n = static_cast<Eigen::Index>(anchors.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = std::sin(azimuths[i]);
    const double c = std::cos(azimuths[i]);
    A(i, 0) = s;
    A(i, 1) = -c;
    b[i] = s * anchors[i].x - c * anchors[i].y;
  }
  if (singular_ratio(A) < 1e-10) fail(ErrorKind::ParallelBearings, "bearing lines are parallel");

  const Eigen::Vector2d p = A.colPivHouseholderQr().solve(b);
  return {p[0], p[1]};
}

}  // namespace wsnloc
