#include "wsnloc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>

#include "wsnloc/decorrelation.hpp"
#include "wsnloc/errors.hpp"
#include "wsnloc/hybrid.hpp"
#include "wsnloc/pme.hpp"

namespace wsnloc {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Prepared {
  CMatrix R;
  ArrayGeometry g;
};

// Applies the configured decorrelation. On a UCA, smoothing and Toeplitz
// reconstruction operate on the phase-mode virtual array.
Prepared preprocess(const CMatrix& R, const ArrayGeometry& g, const MethodConfig& m, int M) {
  if (m.decorrelate == Decorrelation::None) return {R, g};

  Prepared p{R, g};
  if (g.is_uca()) {
    const PmeTransform t = build_transform(g);
    const CMatrix Rv = t.Tv * R * t.Tv.adjoint();
    p = {0.5 * (Rv + Rv.adjoint()), t.virtual_geometry()};
  }

  if (m.decorrelate == Decorrelation::Toeplitz) return {toeplitz_reconstruct(p.R), p.g};

  const int N = p.g.elements();
  const bool backward = m.decorrelate == Decorrelation::Fbss;
  const SmoothingPlan plan = m.subarray_len ? make_plan(N, *m.subarray_len) : default_plan(N, M, backward);
  const CMatrix Rs = backward ? fbss(p.R, plan, M) : fss(p.R, plan, M);

  if (const auto* u = std::get_if<Ula>(&p.g.kind)) {
    return {Rs, ArrayGeometry::ula(plan.subarray_len, u->spacing, p.g.wavelength)};
  }
  return {Rs, ArrayGeometry::virtual_ula(plan.subarray_len)};
}

std::vector<double> estimate_doas(const CMatrix& R, const ArrayGeometry& g, const MethodConfig& m, int M,
                                  double grid_step) {
  switch (m.doa) {
    case DoaMethod::UcaRootMusic:
      return uca_root_music_cov(R, build_transform(g), M).azimuths;
    case DoaMethod::UcaEsprit:
      return uca_esprit_cov(R, build_transform(g), M).azimuths;
    default:
      break;
  }
  const Prepared p = preprocess(R, g, m, M);
  switch (m.doa) {
    case DoaMethod::RootMusic: return root_music(p.R, p.g, M).azimuths;
    case DoaMethod::Esprit: return esprit_cov(p.R, p.g, M).azimuths;
    default: return music(p.R, p.g, M, grid_step).estimate.azimuths;
  }
}

Position2D draw_target(const ScenarioConfig& cfg, Rng& rng) {
  if (cfg.target) return *cfg.target;
  const double x = rng.uniform(0.0, cfg.region_width);
  const double y = rng.uniform(0.0, cfg.region_height);
  return {x, y};
}

struct Channels {
  ChannelModel truth;
  ChannelModel assumed;
};

Channels channels_for(const ScenarioConfig& cfg, double snr_db) {
  Channels c{cfg.channel, cfg.channel};
  const double sigma = sigma_from_snr(snr_db, cfg.sigma_ref_db);
  c.truth.eta = cfg.true_eta;
  c.truth.sigma_db = sigma;
  c.assumed.sigma_db = sigma;
  return c;
}

Position2D rss_estimate(const LinearSystem& sys, RssEstimator est, const ChannelModel& assumed,
                        const std::vector<double>& dists, const HuberOptions& huber) {
  switch (est) {
    case RssEstimator::Ls: return ls_solve(sys);
    case RssEstimator::Wls: return wls_solve(sys, wls_weights(assumed, dists));
    case RssEstimator::Huber: return huber_irls(sys, wls_weights(assumed, dists), huber).position;
  }
  return ls_solve(sys);
}

void run_rss(const ScenarioConfig& cfg, double snr_db, Rng& rng, TrialOutcome& out) {
  out.truth = draw_target(cfg, rng);
  const Channels ch = channels_for(cfg, snr_db);
  std::vector<double> dists;
  for (const auto& a : cfg.anchors) dists.push_back(measure_rss(distance(a, out.truth), ch.truth, ch.assumed, rng).est_distance);
  const LinearSystem sys = build_lop_system(cfg.anchors, dists);
  out.estimate = rss_estimate(sys, cfg.method.estimator, ch.assumed, dists, cfg.method.huber);
  out.error = distance(out.estimate, out.truth);
}

void run_doa_angle(const ScenarioConfig& cfg, double snr_db, Rng& rng, TrialOutcome& out) {
  const ArrayGeometry& g = *cfg.array;
  const int M = cfg.sources.count();
  const CMatrix X = synthesize_snapshots(g, cfg.sources, cfg.snapshots, snr_db, rng);
  std::vector<double> est = estimate_doas(sample_covariance(X), g, cfg.method, M, cfg.grid_step);

  std::vector<double> truth = cfg.sources.azimuths;
  for (double& t : truth) t = g.full_circle() ? wrap_angle(t) : t;
  std::sort(truth.begin(), truth.end());
  double acc = 0.0;
  for (int m = 0; m < M; ++m) {
    const double d = wrap_angle(est[m] - truth[m]) * kRadToDeg;
    acc += d * d;
  }
  out.estimated_angles = std::move(est);
  out.error = std::sqrt(acc / M);
}

void run_doa_triangulation(const ScenarioConfig& cfg, double snr_db, Rng& rng, TrialOutcome& out) {
  const ArrayGeometry& g = *cfg.array;
  out.truth = draw_target(cfg, rng);
  std::vector<double> bearings;
  for (const auto& a : cfg.anchors) {
    const double b = bearing(a, out.truth);
    if (g.is_ula() && std::abs(b) >= std::numbers::pi / 2) {
      fail(ErrorKind::ArcsinOutOfRange, "target lies behind a ULA anchor (broadside faces +x)");
    }
    const SourceSet src{{b}, {1.0}, false};
    const CMatrix X = synthesize_snapshots(g, src, cfg.snapshots, snr_db, rng);
    bearings.push_back(estimate_doas(sample_covariance(X), g, cfg.method, 1, cfg.grid_step).front());
  }
  out.estimated_angles = bearings;
  out.estimate = bearing_lines_locate(cfg.anchors, bearings);
  out.error = distance(out.estimate, out.truth);
}

void run_hybrid(const ScenarioConfig& cfg, double snr_db, Rng& rng, TrialOutcome& out) {
  const HybridConfig& hc = *cfg.hybrid;
  const HybridNode node = HybridNode::make(hc.center, *cfg.array);
  out.truth = draw_target(cfg, rng);
  const Channels ch = channels_for(cfg, snr_db);

  // Draw order is fixed so that every scheme sees the same measurements.
  std::vector<RssMeasurement> element_rss;
  double d_hyb = 0.0;
  for (const auto& e : node.element_positions) {
    element_rss.push_back(measure_rss(distance(e, out.truth), ch.truth, ch.assumed, rng));
    d_hyb += element_rss.back().est_distance;
  }
  d_hyb /= static_cast<double>(element_rss.size());
  std::vector<double> anchor_d;
  for (const auto& a : cfg.anchors) anchor_d.push_back(measure_rss(distance(a, out.truth), ch.truth, ch.assumed, rng).est_distance);

  const double true_bearing = bearing(hc.center, out.truth);
  const MethodConfig& m = cfg.method;

  auto rss_only = [&]() {
    AnchorSet anchors = cfg.anchors;
    anchors.push_back(hc.center);
    std::vector<double> dists = anchor_d;
    dists.push_back(d_hyb);
    return rss_estimate(build_lop_system(anchors, dists), m.estimator, ch.assumed, dists, m.huber);
  };

  if (m.hybrid == HybridScheme::RssOnly) {
    out.estimate = rss_only();
  } else if (m.hybrid == HybridScheme::Fbss) {
    SourceSet src{{true_bearing}, {1.0}, hc.coherent};
    for (double a : hc.interferers) {
      src.azimuths.push_back(a);
      src.amplitudes.push_back(1.0);
    }
    const CMatrix X = synthesize_snapshots(*cfg.array, src, cfg.snapshots, snr_db, rng);
    const double reference = bearing(hc.center, rss_only());
    const PmeTransform pme = build_transform(*cfg.array);
    std::optional<SmoothingPlan> plan;
    if (m.subarray_len) plan = make_plan(2 * pme.h + 1, *m.subarray_len);
    const HybridFbssResult r =
        hybrid_with_fbss(node, X, element_rss, pme, src.count(), reference, plan, cfg.grid_step);
    out.estimate = r.position;
    out.estimated_angles = {r.doa};
  } else {
    const SourceSet src{{true_bearing}, {1.0}, false};
    const CMatrix X = synthesize_snapshots(*cfg.array, src, cfg.snapshots, snr_db, rng);
    MethodConfig dm = m;
    dm.decorrelate = Decorrelation::None;
    const double doa = estimate_doas(sample_covariance(X), *cfg.array, dm, 1, cfg.grid_step).front();
    out.estimated_angles = {doa};
    switch (m.hybrid) {
      case HybridScheme::Single:
        out.estimate = hybrid_single_node(node, doa, element_rss);
        break;
      case HybridScheme::Ls:
      case HybridScheme::Wls:
        out.estimate = hybrid_anchor_fusion(node, cfg.anchors, anchor_d, d_hyb,
                                            m.hybrid == HybridScheme::Ls ? FusionEstimator::Ls : FusionEstimator::Wls,
                                            doa, ch.assumed);
        break;
      case HybridScheme::TwoLines: {
        const auto k = static_cast<std::size_t>(hc.two_lines_anchor);
        out.estimate = two_lines(node, cfg.anchors[k], anchor_d[k], d_hyb, doa);
        break;
      }
      default:
        break;
    }
  }
  out.error = distance(out.estimate, out.truth);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

bool MonteCarloResult::any_row_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const RmseRow& r) { return r.failures == r.trials; });
}

TrialOutcome run_trial(const ScenarioConfig& cfg, Experiment kind, int snr_index, int trial_index) {
  const auto start = std::chrono::steady_clock::now();
  TrialOutcome out;
  Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(snr_index), static_cast<std::uint64_t>(trial_index));
  const double snr = cfg.snr_db.at(static_cast<std::size_t>(snr_index));
  try {
    switch (kind) {
      case Experiment::Rss: run_rss(cfg, snr, rng, out); break;
      case Experiment::Doa:
        if (cfg.method.doa_mode == DoaMode::Triangulation) run_doa_triangulation(cfg, snr, rng, out);
        else run_doa_angle(cfg, snr, rng, out);
        break;
      case Experiment::Hybrid: run_hybrid(cfg, snr, rng, out); break;
      case Experiment::Spectrum: fail(ErrorKind::InvalidArgument, "spectrum dumps have no trials");
    }
    out.ok = std::isfinite(out.error);
    if (!out.ok) out.failure = "non-finite error";
  } catch (const Error& e) {
    out.ok = false;
    out.failure = e.what();
  }
  out.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

MonteCarloResult monte_carlo(const ScenarioConfig& cfg, Experiment kind) {
  cfg.validate(kind);
  const int n_snr = static_cast<int>(cfg.snr_db.size());
  const int total = n_snr * cfg.trials;

  MonteCarloResult res;
  res.trials.resize(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int cell = next++; cell < total; cell = next++) {
      TrialRecord& rec = res.trials[static_cast<std::size_t>(cell)];
      rec.snr_index = cell / cfg.trials;
      rec.trial_index = cell % cfg.trials;
      rec.outcome = run_trial(cfg, kind, rec.snr_index, rec.trial_index);
    }
  };
  const int workers = std::clamp(cfg.workers, 1, std::max(1, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (int s = 0; s < n_snr; ++s) {
    RmseRow row;
    row.snr_db = cfg.snr_db[static_cast<std::size_t>(s)];
    row.trials = cfg.trials;
    double sq = 0.0;
    double runtime = 0.0;
    int ok = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialOutcome& o = res.trials[static_cast<std::size_t>(s * cfg.trials + t)].outcome;
      runtime += o.runtime_ms;
      if (o.ok) {
        sq += o.error * o.error;
        ++ok;
      }
    }
    row.failures = cfg.trials - ok;
    row.rmse = ok > 0 ? std::sqrt(sq / ok) : std::nan("");
    row.mean_runtime_ms = runtime / cfg.trials;
    res.rows.push_back(row);
  }
  return res;
}

void write_rmse_csv(const MonteCarloResult& r, std::ostream& out) {
  out << "snr_db,rmse,trials,failures\n";
  for (const auto& row : r.rows) {
    out << format_number(row.snr_db) << ',' << format_number(row.rmse) << ',' << row.trials << ',' << row.failures
        << '\n';
  }
}

void write_trial_log(const MonteCarloResult& r, std::ostream& out) {
  out << "snr_db_index,trial,ok,error,est_x,est_y,true_x,true_y,message\n";
  for (const auto& rec : r.trials) {
    const TrialOutcome& o = rec.outcome;
    std::string msg = o.failure;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out << rec.snr_index << ',' << rec.trial_index << ',' << (o.ok ? 1 : 0) << ',' << format_number(o.error) << ','
        << format_number(o.estimate.x) << ',' << format_number(o.estimate.y) << ',' << format_number(o.truth.x) << ','
        << format_number(o.truth.y) << ',' << msg << '\n';
  }
}

Spectrum compute_spectrum(const ScenarioConfig& cfg) {
  cfg.validate(Experiment::Spectrum);
  const ArrayGeometry& g = *cfg.array;
  const int M = cfg.sources.count();
  Rng rng = Rng::stream(cfg.seed, 0, 0);
  const CMatrix X = synthesize_snapshots(g, cfg.sources, cfg.snapshots, cfg.snr_db.front(), rng);
  const Prepared p = preprocess(sample_covariance(X), g, cfg.method, M);
  return music_spectrum(p.R, p.g, M, angle_grid(p.g, cfg.grid_step));
}

void write_spectrum_csv(const Spectrum& s, std::ostream& out) {
  out << "angle_deg,power_db\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    out << format_number(s.grid[i] * kRadToDeg) << ',' << format_number(s.power_db[i]) << '\n';
  }
}

void dump_spectrum(const ScenarioConfig& cfg, const std::string& path) {
  const Spectrum s = compute_spectrum(cfg);
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  write_spectrum_csv(s, out);
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace wsnloc
