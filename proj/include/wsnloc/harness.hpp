#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wsnloc/config.hpp"

namespace wsnloc {

struct TrialOutcome {
  bool ok = false;
  double error = 0.0;  // metres, or degrees for DOA angle experiments
  Position2D estimate;
  Position2D truth;
  std::vector<double> estimated_angles;  // radians, DOA angle experiments only
  std::string failure;                   // error text for failed trials
  double runtime_ms = 0.0;
};

struct RmseRow {
  double snr_db = 0.0;
  double rmse = 0.0;  // NaN when every trial failed
  int trials = 0;
  int failures = 0;
  double mean_runtime_ms = 0.0;
};

struct TrialRecord {
  int snr_index = 0;
  int trial_index = 0;
  TrialOutcome outcome;
};

struct MonteCarloResult {
  std::vector<RmseRow> rows;
  std::vector<TrialRecord> trials;  // ordered by (snr_index, trial_index)

  bool any_row_failed() const;
};

// One trial, fully determined by (cfg.seed, snr_index, trial_index). Pipeline
// errors are caught and reported through TrialOutcome::ok.
TrialOutcome run_trial(const ScenarioConfig& cfg, Experiment kind, int snr_index, int trial_index);

// Runs every (snr, trial) cell on cfg.workers threads. The result does not
// depend on the worker count.
MonteCarloResult monte_carlo(const ScenarioConfig& cfg, Experiment kind);

void write_rmse_csv(const MonteCarloResult& r, std::ostream& out);
void write_trial_log(const MonteCarloResult& r, std::ostream& out);

// MUSIC spectrum of the first SNR value, trial 0.
Spectrum compute_spectrum(const ScenarioConfig& cfg);
void write_spectrum_csv(const Spectrum& s, std::ostream& out);
void dump_spectrum(const ScenarioConfig& cfg, const std::string& path);

}  // namespace wsnloc
