#include "wsnloc/rss_estimators.hpp"

#include <cmath>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

constexpr double kMaxCondition = 1e12;

Eigen::Vector2d solve_normal(const Eigen::Matrix2d& N, const Eigen::Vector2d& r) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(N);
  const auto& s = svd.singularValues();
  if (!(s[1] > 0.0) || s[0] / s[1] > kMaxCondition) fail(ErrorKind::SingularSystem, "normal matrix is singular");
  return N.ldlt().solve(r);
}

void check_dims(const LinearSystem& sys, const WeightMatrix& w) {
  if (sys.A.cols() != 2 || sys.A.rows() != sys.b.size()) {
    fail(ErrorKind::DimensionMismatch, "system must be (S-1)x2 with matching b");
  }
  if (w.rows() != sys.A.rows() || w.cols() != sys.A.rows()) {
    fail(ErrorKind::DimensionMismatch, "weight matrix does not match the system");
  }
}

double smoothed_l1(const Eigen::VectorXd& e, double eps) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const double a = std::abs(e[i]);
    acc += a - eps * std::log1p(a / eps);
  }
  return acc;
}

}  // namespace

Position2D ls_solve(const LinearSystem& sys) {
  return wls_solve(sys, WeightMatrix::Identity(sys.A.rows(), sys.A.rows()));
}

double lognormal_square_variance(double d_est, double sigma_d) {
  const double s2 = sigma_d * sigma_d;
  return std::pow(d_est, 4) * (std::exp(8.0 * s2) - std::exp(4.0 * s2));
}

WeightMatrix wls_weights(const ChannelModel& model, const std::vector<double>& est_distances) {
  if (est_distances.size() < 2) fail(ErrorKind::LengthMismatch, "need at least two distances");
  for (double d : est_distances) {
    if (!(d > 0.0)) fail(ErrorKind::NonPositiveDistance, "distances must be positive");
  }
  const auto rows = static_cast<Eigen::Index>(est_distances.size() - 1);
  const double sigma_d = model.log_distance_sigma();
  if (sigma_d == 0.0) return WeightMatrix::Identity(rows, rows);

  // b_i = d_i^2 - d_ref^2 + const, so Cov(b_i, b_j) = delta_ij Var(d_i^2) + Var(d_ref^2).
  const double v_ref = lognormal_square_variance(est_distances.back(), sigma_d);
  Eigen::MatrixXd S = Eigen::MatrixXd::Constant(rows, rows, v_ref);
  for (Eigen::Index i = 0; i < rows; ++i) S(i, i) += lognormal_square_variance(est_distances[i], sigma_d);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    fail(ErrorKind::DegenerateVariance, "distance covariance is not positive definite");
  }
  WeightMatrix W = ldlt.solve(Eigen::MatrixXd::Identity(rows, rows));
  return 0.5 * (W + W.transpose());
}

Position2D wls_solve(const LinearSystem& sys, const WeightMatrix& w) {
  check_dims(sys, w);
  const Eigen::MatrixXd AtW = sys.A.transpose() * w;
  const Eigen::Vector2d p = solve_normal(AtW * sys.A, AtW * sys.b);
  return {p[0], p[1]};
}

EstimatorReport huber_irls(const LinearSystem& sys, const WeightMatrix& w, const HuberOptions& opts) {
  if (!(opts.epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (opts.max_iter < 1) fail(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  check_dims(sys, w);

  Eigen::LLT<Eigen::MatrixXd> llt(w);
  if (llt.info() != Eigen::Success) fail(ErrorKind::SingularSystem, "weight matrix is not positive definite");
  const Eigen::MatrixXd Lt = llt.matrixL().transpose();
  const Eigen::MatrixXd At = Lt * sys.A;
  const Eigen::VectorXd bt = Lt * sys.b;

  const Position2D start = wls_solve(sys, w);
  Eigen::Vector2d p(start.x, start.y);

  EstimatorReport report;
  report.converged = false;
  report.iterations = 0;
  report.objective.push_back(smoothed_l1(At * p - bt, opts.epsilon));

  for (int it = 1; it <= opts.max_iter; ++it) {
    const Eigen::VectorXd e = At * p - bt;
    const Eigen::VectorXd weights = (e.cwiseAbs().array() + opts.epsilon).inverse().matrix();
    const Eigen::MatrixXd AtD = At.transpose() * weights.asDiagonal();
    const Eigen::Vector2d next = solve_normal(AtD * At, AtD * bt);

    const double step = (next - p).norm();
    p = next;
    report.iterations = it;
    report.objective.push_back(smoothed_l1(At * p - bt, opts.epsilon));
    if (step < opts.tol) {
      report.converged = true;
      break;
    }
  }

  report.position = {p[0], p[1]};
  report.final_residual_norm = (sys.A * p - sys.b).norm();
  return report;
}

EstimatorReport huber_irls(const LinearSystem& sys, const HuberOptions& opts) {
  return huber_irls(sys, WeightMatrix::Identity(sys.A.rows(), sys.A.rows()), opts);
}

}  // namespace wsnloc
