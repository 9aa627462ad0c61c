#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wsnloc/channel.hpp"
#include "wsnloc/geometry.hpp"

namespace wsnloc {

using WeightMatrix = Eigen::MatrixXd;

struct EstimatorReport {
  Position2D position;
  int iterations = 1;
  double final_residual_norm = 0.0;  // ||A p - b||, m^2
  bool converged = true;
  // Smoothed l1 objective sum(|e| - eps*ln(1 + |e|/eps)) on whitened residuals,
  // one entry per iterate starting with the initial point.
  std::vector<double> objective;
};

struct HuberOptions {
  double epsilon = 1.0;  // on whitened residuals, so unitless
  int max_iter = 50;
  double tol = 1e-6;     // m
};

Position2D ls_solve(const LinearSystem& sys);

// Var(d^2) for a log-normal distance estimate d_est with log-std sigma_d.
double lognormal_square_variance(double d_est, double sigma_d);

// W = S^-1 where S is the covariance of b for a system built by
// build_lop_system from these distance estimates. Falls back to the identity
// when the model has no shadowing.
WeightMatrix wls_weights(const ChannelModel& model, const std::vector<double>& est_distances);

Position2D wls_solve(const LinearSystem& sys, const WeightMatrix& w);

// l1-style IRLS with per-row weights 1/(|e_i| + eps), started from the WLS
// solution. Residuals are whitened by W before reweighting.
EstimatorReport huber_irls(const LinearSystem& sys, const WeightMatrix& w, const HuberOptions& opts = {});

EstimatorReport huber_irls(const LinearSystem& sys, const HuberOptions& opts = {});

}  // namespace wsnloc
