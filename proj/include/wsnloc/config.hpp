#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/array_model.hpp"
#include "wsnloc/channel.hpp"
#include "wsnloc/doa_estimators.hpp"
#include "wsnloc/geometry.hpp"
#include "wsnloc/rss_estimators.hpp"

namespace wsnloc {

enum class Experiment { Rss, Doa, Hybrid, Spectrum };
enum class RssEstimator { Ls, Wls, Huber };
enum class Decorrelation { None, Fss, Fbss, Toeplitz };
enum class HybridScheme { Single, Fbss, Ls, Wls, TwoLines, RssOnly };
enum class DoaMode { Angle, Triangulation };

std::optional<RssEstimator> parse_rss_estimator(std::string_view s);
std::optional<DoaMethod> parse_doa_method(std::string_view s);
std::optional<Decorrelation> parse_decorrelation(std::string_view s);
std::optional<HybridScheme> parse_hybrid_scheme(std::string_view s);

struct MethodConfig {
  RssEstimator estimator = RssEstimator::Ls;
  DoaMethod doa = DoaMethod::Music;
  Decorrelation decorrelate = Decorrelation::None;
  HybridScheme hybrid = HybridScheme::Single;
  DoaMode doa_mode = DoaMode::Angle;
  std::optional<int> subarray_len;
  HuberOptions huber;
};

struct HybridConfig {
  Position2D center;
  std::vector<double> interferers;  // radians, global frame
  bool coherent = true;
  int two_lines_anchor = 0;
};

struct ScenarioConfig {
  std::string name;
  double region_width = 100.0;
  double region_height = 100.0;
  AnchorSet anchors;
  std::optional<Position2D> target;  // empty means a uniform draw per trial
  ChannelModel channel;              // sigma_db is set per SNR from sigma_ref_db
  double true_eta = 2.0;
  double sigma_ref_db = 8.0;
  std::optional<ArrayGeometry> array;
  SourceSet sources;
  int snapshots = 100;
  std::vector<double> snr_db;
  int trials = 150;
  std::uint64_t seed = 1;
  double grid_step = kDefaultGridStep;
  MethodConfig method;
  std::optional<HybridConfig> hybrid;
  int workers = 1;

  // Cross-field checks for one experiment kind; throws ConfigError.
  void validate(Experiment kind) const;
};

// Parses a JSON scenario. Unknown keys, wrong types and out-of-range values
// throw ConfigError naming the offending field.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

}  // namespace wsnloc
