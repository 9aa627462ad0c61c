// Command-line front end: RMSE-vs-SNR sweeps and MUSIC spectrum dumps.
//
//   wsnloc rss      --config scenario.json --out rmse.csv [--estimator wls]
//   wsnloc doa      --config scenario.json --out rmse.csv [--doa esprit] [--decorrelate fbss]
//   wsnloc hybrid   --config scenario.json --out rmse.csv [--hybrid two-lines]
//   wsnloc spectrum --config scenario.json --out spectrum.csv
//
// Exit status: 0 success, 1 configuration or I/O error, 2 when every trial of
// some SNR value failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wsnloc/errors.hpp"
#include "wsnloc/harness.hpp"
#include "wsnloc/pme.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = "-";
  std::string trial_log;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string estimator;
  std::string doa;
  std::string decorrelate;
  std::string hybrid;
};

void apply_overrides(const Options& o, wsnloc::ScenarioConfig& cfg) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.estimator.empty()) cfg.method.estimator = *wsnloc::parse_rss_estimator(o.estimator);
  if (!o.doa.empty()) cfg.method.doa = *wsnloc::parse_doa_method(o.doa);
  if (!o.decorrelate.empty()) cfg.method.decorrelate = *wsnloc::parse_decorrelation(o.decorrelate);
  if (!o.hybrid.empty()) cfg.method.hybrid = *wsnloc::parse_hybrid_scheme(o.hybrid);
}

bool uses_phase_modes(const wsnloc::ScenarioConfig& cfg, wsnloc::Experiment kind) {
  if (!cfg.array || !cfg.array->is_uca() || kind == wsnloc::Experiment::Rss) return false;
  if (kind == wsnloc::Experiment::Hybrid && cfg.method.hybrid == wsnloc::HybridScheme::RssOnly) return false;
  const auto& m = cfg.method;
  if (m.doa == wsnloc::DoaMethod::UcaRootMusic || m.doa == wsnloc::DoaMethod::UcaEsprit) return true;
  if (kind == wsnloc::Experiment::Hybrid) return m.hybrid == wsnloc::HybridScheme::Fbss;
  return m.decorrelate != wsnloc::Decorrelation::None;
}

void warn_if_clamped(const wsnloc::ScenarioConfig& cfg, wsnloc::Experiment kind) {
  if (!uses_phase_modes(cfg, kind)) return;
  try {
    const auto t = wsnloc::build_transform(*cfg.array);
    if (t.clamped) {
      std::cerr << "warning: phase-mode order reduced to h=" << t.h << " so that N > 2h\n";
    }
  } catch (const wsnloc::Error&) {
    // Reported later by the pipeline itself.
  }
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) wsnloc::fail(wsnloc::ErrorKind::IoError, "cannot write " + path);
  fn(out);
  if (!out) wsnloc::fail(wsnloc::ErrorKind::IoError, "write failed for " + path);
}

int run(wsnloc::Experiment kind, const Options& o) {
  wsnloc::ScenarioConfig cfg = wsnloc::load_config(o.config);
  apply_overrides(o, cfg);
  warn_if_clamped(cfg, kind);

  if (kind == wsnloc::Experiment::Spectrum) {
    const auto spectrum = wsnloc::compute_spectrum(cfg);
    with_output(o.out, [&](std::ostream& out) { wsnloc::write_spectrum_csv(spectrum, out); });
    return 0;
  }

  const auto result = wsnloc::monte_carlo(cfg, kind);
  with_output(o.out, [&](std::ostream& out) { wsnloc::write_rmse_csv(result, out); });
  if (!o.trial_log.empty()) {
    with_output(o.trial_log, [&](std::ostream& out) { wsnloc::write_trial_log(result, out); });
  }
  if (result.any_row_failed()) {
    std::cerr << "error: every trial failed for at least one SNR value\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless sensor network localization experiments"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output CSV path, '-' for stdout");
    sub->add_option("--seed", o.seed, "Override the root seed");
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* rss = app.add_subcommand("rss", "RSS trilateration RMSE versus SNR");
  add_common(rss);
  rss->add_option("--estimator", o.estimator)->check(CLI::IsMember({"ls", "wls", "huber"}));
  rss->add_option("--trial-log", o.trial_log, "Per-trial error CSV");

  auto* doa = app.add_subcommand("doa", "DOA estimation RMSE versus SNR");
  add_common(doa);
  doa->add_option("--doa", o.doa)->check(CLI::IsMember({"music", "root-music", "esprit", "uca-root-music", "uca-esprit"}));
  doa->add_option("--decorrelate", o.decorrelate)->check(CLI::IsMember({"none", "fss", "fbss", "toeplitz"}));
  doa->add_option("--trial-log", o.trial_log, "Per-trial error CSV");

  auto* hybrid = app.add_subcommand("hybrid", "Hybrid RSS and DOA fusion RMSE versus SNR");
  add_common(hybrid);
  hybrid->add_option("--hybrid", o.hybrid)
      ->check(CLI::IsMember({"single", "fbss", "ls", "wls", "two-lines", "rss-only"}));
  hybrid->add_option("--doa", o.doa)->check(CLI::IsMember({"music", "uca-root-music", "uca-esprit"}));
  hybrid->add_option("--estimator", o.estimator, "Estimator for the RSS-only fix")
      ->check(CLI::IsMember({"ls", "wls", "huber"}));
  hybrid->add_option("--trial-log", o.trial_log, "Per-trial error CSV");

  auto* spectrum = app.add_subcommand("spectrum", "MUSIC angular spectrum for one realisation");
  add_common(spectrum);
  spectrum->add_option("--decorrelate", o.decorrelate)->check(CLI::IsMember({"none", "fss", "fbss", "toeplitz"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  wsnloc::Experiment kind = wsnloc::Experiment::Rss;
  if (doa->parsed()) kind = wsnloc::Experiment::Doa;
  if (hybrid->parsed()) kind = wsnloc::Experiment::Hybrid;
  if (spectrum->parsed()) kind = wsnloc::Experiment::Spectrum;

  try {
    return run(kind, o);
  } catch (const wsnloc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == wsnloc::ErrorKind::AllTrialsFailed ? 2 : 1;
  }
}
