#pragma once

#include "wsnloc/rng.hpp"

namespace wsnloc {

inline constexpr double kSpeedOfLight = 299792458.0;

// Log-normal shadowing model. Antenna gains are taken as unity.
struct ChannelModel {
  double d0 = 1.0;          // reference distance, m
  double eta = 2.0;         // path-loss exponent
  double sigma_db = 0.0;    // shadowing standard deviation, dB
  double wavelength = kSpeedOfLight / 1e9;

  void validate() const;

  // Standard deviation of ln(d_est / d) implied by sigma_db.
  double log_distance_sigma() const;
};

struct RssMeasurement {
  double path_loss_db = 0.0;
  double est_distance = 0.0;
};

double free_space_path_loss(double d, const ChannelModel& model);

// Path loss at distance d including one shadowing draw from rng.
double path_loss(double d, const ChannelModel& model, Rng& rng);

double invert_distance(double pl_db, const ChannelModel& model);

// Draws a path loss under `truth` and inverts it with `assumed`. The two
// models differ only when studying exponent mismatch.
RssMeasurement measure_rss(double d, const ChannelModel& truth, const ChannelModel& assumed, Rng& rng);

inline RssMeasurement measure_rss(double d, const ChannelModel& model, Rng& rng) {
  return measure_rss(d, model, model, rng);
}

// Shadowing std for a nominal SNR: sigma_ref * 10^(-snr/20).
double sigma_from_snr(double snr_db, double sigma_ref_db);

}  // namespace wsnloc
