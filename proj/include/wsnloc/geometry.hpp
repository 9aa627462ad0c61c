#pragma once

#include <vector>

#include <Eigen/Dense>

namespace wsnloc {

struct Position2D {
  double x = 0.0;
  double y = 0.0;

  friend Position2D operator+(Position2D a, Position2D b) { return {a.x + b.x, a.y + b.y}; }
  friend Position2D operator-(Position2D a, Position2D b) { return {a.x - b.x, a.y - b.y}; }
  friend Position2D operator*(double s, Position2D a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Position2D&, const Position2D&) = default;
};

using AnchorSet = std::vector<Position2D>;

// Rows of A and entries of b, one per anchor i < S-1, each differenced
// against the last anchor of the set.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

double distance(Position2D a, Position2D b);

double norm(Position2D v);

// Azimuth of b seen from a, counter-clockwise from +x, in radians.
double bearing(Position2D from, Position2D to);

LinearSystem build_lop_system(const AnchorSet& anchors, const std::vector<double>& distances);

// Intersects the bearing lines cast from each anchor; azimuths are radians
// counter-clockwise from +x. With more than two lines the result is the
// least-squares point of the stacked line equations.
Position2D bearing_lines_locate(const AnchorSet& anchors, const std::vector<double>& azimuths);

}  // namespace wsnloc
