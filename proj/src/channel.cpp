#include "wsnloc/channel.hpp"

#include <cmath>
#include <numbers>

#include "wsnloc/errors.hpp"

namespace wsnloc {

void ChannelModel::validate() const {
  if (!(d0 > 0.0)) fail(ErrorKind::InvalidArgument, "d0 must be positive");
  if (!(eta > 0.0)) fail(ErrorKind::InvalidArgument, "eta must be positive");
  if (!(sigma_db >= 0.0)) fail(ErrorKind::InvalidArgument, "sigma_db must be non-negative");
  if (!(wavelength > 0.0)) fail(ErrorKind::InvalidArgument, "wavelength must be positive");
}

double ChannelModel::log_distance_sigma() const { return sigma_db * std::numbers::ln10 / (10.0 * eta); }

double free_space_path_loss(double d, const ChannelModel& model) {
  if (!(d > 0.0)) fail(ErrorKind::NonPositiveDistance, "distance must be positive");
  return 20.0 * std::log10(4.0 * std::numbers::pi * d / model.wavelength);
}

double path_loss(double d, const ChannelModel& model, Rng& rng) {
  if (!(d > 0.0)) fail(ErrorKind::NonPositiveDistance, "distance must be positive");
  double pl = free_space_path_loss(model.d0, model) + 10.0 * model.eta * std::log10(d / model.d0);
  if (model.sigma_db > 0.0) pl += model.sigma_db * rng.normal();
  return pl;
}

double invert_distance(double pl_db, const ChannelModel& model) {
  const double pl0 = free_space_path_loss(model.d0, model);
  return model.d0 * std::pow(10.0, (pl_db - pl0) / (10.0 * model.eta));
}

RssMeasurement measure_rss(double d, const ChannelModel& truth, const ChannelModel& assumed, Rng& rng) {
  RssMeasurement m;
  m.path_loss_db = path_loss(d, truth, rng);
  m.est_distance = invert_distance(m.path_loss_db, assumed);
  return m;
}

double sigma_from_snr(double snr_db, double sigma_ref_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return sigma_ref_db * std::pow(10.0, -snr_db / 20.0);
}

}  // namespace wsnloc
