#include "wsnloc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wsnloc/errors.hpp"

namespace wsnloc {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::ConfigError, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) bad(path, "unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(path, "must be finite");
  return d;
}

double positive(const json& v, const std::string& path) {
  const double d = number(v, path);
  if (!(d > 0.0)) bad(path, "must be positive");
  return d;
}

int integer(const json& v, const std::string& path, int lo) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  const auto i = v.get<long long>();
  if (i < lo || i > 1'000'000'000) bad(path, "out of range");
  return static_cast<int>(i);
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) bad(path, "expected true or false");
  return v.get<bool>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a string");
  return v.get<std::string>();
}

Position2D point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) bad(path, "expected [x, y]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void parse_channel(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "channel", {"frequency_hz", "wavelength_m", "d0", "eta", "true_eta", "sigma_ref_db"});
  if (j.contains("frequency_hz") && j.contains("wavelength_m")) bad("channel", "give frequency_hz or wavelength_m, not both");
  if (j.contains("frequency_hz")) cfg.channel.wavelength = kSpeedOfLight / positive(j["frequency_hz"], "channel.frequency_hz");
  if (j.contains("wavelength_m")) cfg.channel.wavelength = positive(j["wavelength_m"], "channel.wavelength_m");
  if (j.contains("d0")) cfg.channel.d0 = positive(j["d0"], "channel.d0");
  if (j.contains("eta")) cfg.channel.eta = positive(j["eta"], "channel.eta");
  cfg.true_eta = j.contains("true_eta") ? positive(j["true_eta"], "channel.true_eta") : cfg.channel.eta;
  if (j.contains("sigma_ref_db")) {
    cfg.sigma_ref_db = number(j["sigma_ref_db"], "channel.sigma_ref_db");
    if (cfg.sigma_ref_db < 0.0) bad("channel.sigma_ref_db", "must be non-negative");
  }
}

ArrayGeometry parse_array(const json& j, double wavelength) {
  if (!j.is_object() || !j.contains("type")) bad("array", "needs a type");
  const std::string type = string(j["type"], "array.type");
  try {
    if (type == "ula") {
      check_keys(j, "array", {"type", "elements", "spacing_wavelengths"});
      const int n = integer(j.at("elements"), "array.elements", 2);
      const double d = j.contains("spacing_wavelengths") ? positive(j["spacing_wavelengths"], "array.spacing_wavelengths") : 0.5;
      return ArrayGeometry::ula(n, d * wavelength, wavelength);
    }
    if (type == "uca") {
      check_keys(j, "array", {"type", "elements", "radius_wavelengths", "elevation_deg", "max_mode"});
      const int n = integer(j.at("elements"), "array.elements", 2);
      const double r = positive(j.at("radius_wavelengths"), "array.radius_wavelengths");
      const double el = j.contains("elevation_deg") ? number(j["elevation_deg"], "array.elevation_deg") : 90.0;
      const int h = j.contains("max_mode") ? integer(j["max_mode"], "array.max_mode", 1) : -1;
      return ArrayGeometry::uca(n, r * wavelength, el * kDeg, wavelength, h);
    }
  } catch (const json::out_of_range&) {
    bad("array", "missing required field");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    bad("array", e.what());
  }
  bad("array.type", "must be 'ula' or 'uca'");
}

void parse_sources(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "sources", {"azimuths_deg", "amplitudes", "coherent"});
  if (!j.contains("azimuths_deg")) bad("sources", "azimuths_deg is required");
  for (double a : numbers(j["azimuths_deg"], "sources.azimuths_deg")) cfg.sources.azimuths.push_back(a * kDeg);
  if (j.contains("amplitudes")) {
    cfg.sources.amplitudes = numbers(j["amplitudes"], "sources.amplitudes");
    if (cfg.sources.amplitudes.size() != cfg.sources.azimuths.size()) bad("sources.amplitudes", "one per azimuth");
    for (double r : cfg.sources.amplitudes) {
      if (!(r > 0.0)) bad("sources.amplitudes", "must be positive");
    }
  } else {
    cfg.sources.amplitudes.assign(cfg.sources.azimuths.size(), 1.0);
  }
  if (j.contains("coherent")) cfg.sources.coherent = boolean(j["coherent"], "sources.coherent");
}

void parse_method(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "method", {"estimator", "doa", "decorrelate", "hybrid", "doa_mode", "subarray_len", "huber_epsilon",
                           "huber_max_iter", "huber_tol"});
  MethodConfig& m = cfg.method;
  if (j.contains("estimator")) {
    const auto v = parse_rss_estimator(string(j["estimator"], "method.estimator"));
    if (!v) bad("method.estimator", "expected ls, wls or huber");
    m.estimator = *v;
  }
  if (j.contains("doa")) {
    const auto v = parse_doa_method(string(j["doa"], "method.doa"));
    if (!v) bad("method.doa", "expected music, root-music, esprit, uca-root-music or uca-esprit");
    m.doa = *v;
  }
  if (j.contains("decorrelate")) {
    const auto v = parse_decorrelation(string(j["decorrelate"], "method.decorrelate"));
    if (!v) bad("method.decorrelate", "expected none, fss, fbss or toeplitz");
    m.decorrelate = *v;
  }
  if (j.contains("hybrid")) {
    const auto v = parse_hybrid_scheme(string(j["hybrid"], "method.hybrid"));
    if (!v) bad("method.hybrid", "expected single, fbss, ls, wls, two-lines or rss-only");
    m.hybrid = *v;
  }
  if (j.contains("doa_mode")) {
    const std::string s = string(j["doa_mode"], "method.doa_mode");
    if (s == "angle") m.doa_mode = DoaMode::Angle;
    else if (s == "triangulation") m.doa_mode = DoaMode::Triangulation;
    else bad("method.doa_mode", "expected angle or triangulation");
  }
  if (j.contains("subarray_len")) m.subarray_len = integer(j["subarray_len"], "method.subarray_len", 1);
  if (j.contains("huber_epsilon")) m.huber.epsilon = positive(j["huber_epsilon"], "method.huber_epsilon");
  if (j.contains("huber_max_iter")) m.huber.max_iter = integer(j["huber_max_iter"], "method.huber_max_iter", 1);
  if (j.contains("huber_tol")) m.huber.tol = positive(j["huber_tol"], "method.huber_tol");
}

void parse_hybrid(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "hybrid", {"center", "interferers_deg", "coherent", "two_lines_anchor"});
  HybridConfig h;
  if (!j.contains("center")) bad("hybrid", "center is required");
  h.center = point(j["center"], "hybrid.center");
  if (j.contains("interferers_deg")) {
    for (double a : numbers(j["interferers_deg"], "hybrid.interferers_deg")) h.interferers.push_back(a * kDeg);
  }
  if (j.contains("coherent")) h.coherent = boolean(j["coherent"], "hybrid.coherent");
  if (j.contains("two_lines_anchor")) h.two_lines_anchor = integer(j["two_lines_anchor"], "hybrid.two_lines_anchor", 0);
  cfg.hybrid = h;
}

bool inside(const ScenarioConfig& c, Position2D p) {
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= c.region_width && p.y <= c.region_height;
}

}  // namespace

std::optional<RssEstimator> parse_rss_estimator(std::string_view s) {
  if (s == "ls") return RssEstimator::Ls;
  if (s == "wls") return RssEstimator::Wls;
  if (s == "huber") return RssEstimator::Huber;
  return std::nullopt;
}

std::optional<DoaMethod> parse_doa_method(std::string_view s) {
  if (s == "music") return DoaMethod::Music;
  if (s == "root-music") return DoaMethod::RootMusic;
  if (s == "esprit") return DoaMethod::Esprit;
  if (s == "uca-root-music") return DoaMethod::UcaRootMusic;
  if (s == "uca-esprit") return DoaMethod::UcaEsprit;
  return std::nullopt;
}

std::optional<Decorrelation> parse_decorrelation(std::string_view s) {
  if (s == "none") return Decorrelation::None;
  if (s == "fss") return Decorrelation::Fss;
  if (s == "fbss") return Decorrelation::Fbss;
  if (s == "toeplitz") return Decorrelation::Toeplitz;
  return std::nullopt;
}

std::optional<HybridScheme> parse_hybrid_scheme(std::string_view s) {
  if (s == "single") return HybridScheme::Single;
  if (s == "fbss") return HybridScheme::Fbss;
  if (s == "ls") return HybridScheme::Ls;
  if (s == "wls") return HybridScheme::Wls;
  if (s == "two-lines") return HybridScheme::TwoLines;
  if (s == "rss-only") return HybridScheme::RssOnly;
  return std::nullopt;
}

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, "config", {"name", "region", "anchors", "target", "channel", "array", "sources", "snapshots", "snr_db",
                           "trials", "seed", "grid_step_deg", "method", "hybrid", "workers"});

  ScenarioConfig cfg;
  if (j.contains("name")) cfg.name = string(j["name"], "name");
  if (j.contains("region")) {
    const Position2D r = point(j["region"], "region");
    if (!(r.x > 0.0 && r.y > 0.0)) bad("region", "dimensions must be positive");
    cfg.region_width = r.x;
    cfg.region_height = r.y;
  }
  if (j.contains("anchors")) {
    if (!j["anchors"].is_array()) bad("anchors", "expected an array of [x, y]");
    for (std::size_t i = 0; i < j["anchors"].size(); ++i) {
      cfg.anchors.push_back(point(j["anchors"][i], "anchors[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("target")) {
    if (j["target"].is_string()) {
      if (j["target"].get<std::string>() != "random") bad("target", "expected [x, y] or \"random\"");
    } else {
      cfg.target = point(j["target"], "target");
    }
  }
  if (j.contains("channel")) parse_channel(j["channel"], cfg);
  if (j.contains("array")) cfg.array = parse_array(j["array"], cfg.channel.wavelength);
  if (j.contains("sources")) parse_sources(j["sources"], cfg);
  if (j.contains("snapshots")) cfg.snapshots = integer(j["snapshots"], "snapshots", 1);
  if (!j.contains("snr_db")) bad("snr_db", "is required");
  cfg.snr_db = numbers(j["snr_db"], "snr_db");
  if (cfg.snr_db.empty()) bad("snr_db", "must not be empty");
  if (j.contains("trials")) cfg.trials = integer(j["trials"], "trials", 1);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("grid_step_deg")) cfg.grid_step = positive(j["grid_step_deg"], "grid_step_deg") * kDeg;
  if (j.contains("method")) parse_method(j["method"], cfg);
  if (j.contains("hybrid")) parse_hybrid(j["hybrid"], cfg);
  if (j.contains("workers")) cfg.workers = integer(j["workers"], "workers", 1);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void ScenarioConfig::validate(Experiment kind) const {
  if (trials < 1) bad("trials", "must be at least 1");
  if (snr_db.empty()) bad("snr_db", "must not be empty");
  if (target && !inside(*this, *target)) bad("target", "lies outside the region");
  for (const auto& a : anchors) {
    if (!inside(*this, a)) bad("anchors", "anchor lies outside the region");
  }

  const bool needs_array = kind == Experiment::Doa || kind == Experiment::Spectrum || kind == Experiment::Hybrid;
  if (needs_array && !array) bad("array", "is required for this experiment");

  switch (kind) {
    case Experiment::Rss:
      if (anchors.size() < 3) bad("anchors", "trilateration needs at least three anchors");
      break;
    case Experiment::Spectrum:
      if (method.doa != DoaMethod::Music) bad("method.doa", "spectrum dumps use music");
      [[fallthrough]];
    case Experiment::Doa: {
      const bool uca_method = method.doa == DoaMethod::UcaRootMusic || method.doa == DoaMethod::UcaEsprit;
      const bool ula_method = method.doa == DoaMethod::RootMusic || method.doa == DoaMethod::Esprit;
      if (uca_method && !array->is_uca()) bad("method.doa", "UCA estimators need a UCA array");
      if (ula_method && !array->is_ula()) bad("method.doa", "this estimator needs a ULA array");
      if (uca_method && method.decorrelate != Decorrelation::None) {
        bad("method.decorrelate", "UCA estimators run without decorrelation");
      }
      if (kind == Experiment::Doa && method.doa_mode == DoaMode::Triangulation) {
        if (anchors.size() < 2) bad("anchors", "triangulation needs at least two anchors");
      } else if (sources.azimuths.empty()) {
        bad("sources", "at least one source is required");
      }
      break;
    }
    case Experiment::Hybrid:
      if (!hybrid) bad("hybrid", "section is required");
      if (!array->is_uca()) bad("array", "the hybrid node carries a UCA");
      if (method.doa == DoaMethod::RootMusic || method.doa == DoaMethod::Esprit) {
        bad("method.doa", "hybrid node supports music, uca-root-music or uca-esprit");
      }
      if (!inside(*this, hybrid->center)) bad("hybrid.center", "lies outside the region");
      switch (method.hybrid) {
        case HybridScheme::Ls:
        case HybridScheme::Wls:
          if (anchors.size() < 2) bad("anchors", "fusion needs at least two RSS anchors");
          break;
        case HybridScheme::Fbss:
        case HybridScheme::RssOnly:
          if (anchors.size() < 2) bad("anchors", "RSS bearing needs at least two anchors besides the hybrid node");
          break;
        case HybridScheme::TwoLines:
          if (hybrid->two_lines_anchor >= static_cast<int>(anchors.size())) {
            bad("hybrid.two_lines_anchor", "index out of range");
          }
          break;
        case HybridScheme::Single:
          break;
      }
      break;
  }
}

}  // namespace wsnloc
