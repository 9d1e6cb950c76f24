#include "mimo/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mimo/errors.hpp"

namespace mimo {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
// Reference UE starts at azimuth −120° (in front of the x–z array plane, y < 0)
// and moves counter-clockwise toward broadside.
constexpr double kCircularStartPhase = -120.0 * kDeg;

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "': expected an integer");
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  const auto v = j.get<long long>();
  if (v < 0) throw ConfigError("config key '" + key + "': must be non-negative");
  return static_cast<std::size_t>(v);
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "': expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("config key '" + key + "': must be finite");
  return v;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) {
      throw ConfigError("unknown config key '" + (where.empty() ? k : where + "." + k) + "'");
    }
  }
}

Position3 get_xy(const json& j, const std::string& key, double z) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("config key '" + key + "': expected [x, y]");
  return {get_real(j[0], key), get_real(j[1], key), z};
}

TrackSpec parse_track(const json& j, std::size_t i, const ScenarioConfig& cfg) {
  const std::string where = "tracks[" + std::to_string(i) + "]";
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(where + ": expected an object with 'kind'");
  const auto kind = get_as<std::string>(j.at("kind"), where + ".kind");
  if (kind == "circular") {
    reject_unknown(j, {"kind", "center", "radius_m", "initial_phase_deg", "direction"}, where);
    TrackSpec t = TrackSpec::circle({0.0, 0.0, cfg.ue_height_m}, cfg.track_radius_m, 0.0, cfg.speed_mps);
    if (j.contains("center")) t.center = get_xy(j["center"], where + ".center", cfg.ue_height_m);
    if (j.contains("radius_m")) t.radius_m = get_real(j["radius_m"], where + ".radius_m");
    if (j.contains("initial_phase_deg")) {
      t.initial_phase_rad = get_real(j["initial_phase_deg"], where + ".initial_phase_deg") * kDeg;
    }
    if (j.contains("direction")) t.direction = get_as<int>(j["direction"], where + ".direction");
    return t;
  }
  if (kind == "linear") {
    reject_unknown(j, {"kind", "start", "heading"}, where);
    if (!j.contains("start") || !j.contains("heading")) {
      throw ConfigError(where + ": linear tracks need 'start' and 'heading'");
    }
    const Position3 start = get_xy(j["start"], where + ".start", cfg.ue_height_m);
    Vector3 heading = get_xy(j["heading"], where + ".heading", 0.0);
    if (!(heading.norm() > 0.0)) throw ConfigError(where + ".heading: must be non-zero");
    heading.normalize();
    return TrackSpec::line(start, heading, cfg.speed_mps);
  }
  throw ConfigError(where + ".kind: expected 'circular' or 'linear', got '" + kind + "'");
}

json track_to_json(const TrackSpec& t) {
  if (t.kind == TrackSpec::Kind::circular) {
    return {{"kind", "circular"},
            {"center", {t.center.x(), t.center.y()}},
            {"radius_m", t.radius_m},
            {"initial_phase_deg", t.initial_phase_rad / kDeg},
            {"direction", t.direction}};
  }
  return {{"kind", "linear"},
          {"start", {t.start.x(), t.start.y()}},
          {"heading", {t.heading.x(), t.heading.y()}}};
}

std::string policy_name(TzfUpdatePolicy p) { return p == TzfUpdatePolicy::both ? "both" : "vertical_once"; }

TzfUpdatePolicy parse_policy(const std::string& s, const std::string& key) {
  if (s == "both") return TzfUpdatePolicy::both;
  if (s == "vertical_once") return TzfUpdatePolicy::vertical_once;
  throw ConfigError("config key '" + key + "': expected 'both' or 'vertical_once', got '" + s + "'");
}

json to_json_object(const ScenarioConfig& c, bool with_seed) {
  json j;
  j["array"] = {{"m_h", c.m_h},
                {"m_v", c.m_v},
                {"spacing_wavelengths", c.spacing_wavelengths},
                {"carrier_hz", c.carrier_hz}};
  j["ue_count"] = c.ue_count;
  j["k_factor_db"] = c.k_factor_db;
  j["snr_ul_db"] = c.snr_ul_db;
  j["snr_dl_db"] = c.snr_dl_db;
  j["angle_spread_deg"] = {{"elevation", c.angle_spread_elevation_deg},
                           {"azimuth", c.angle_spread_azimuth_deg}};
  j["tti_len_s"] = c.tti_len_s;
  j["total_ttis"] = c.total_ttis;
  j["uplink_period_ttis"] = c.uplink_period_ttis;
  j["pilot_length"] = c.effective_pilot_length();
  j["realizations"] = c.realizations;
  j["sumrate_realizations"] = c.sumrate_realizations;
  j["subspace_stride"] = c.subspace_stride;
  j["runtime_designs"] = c.runtime_designs;
  j["track_kind"] = c.track_kind;
  j["track_radius_m"] = c.track_radius_m;
  j["interferer_radius_m"] = c.interferer_radius_m;
  j["track_spacing_deg"] = c.track_spacing_deg;
  json tracks = json::array();
  for (const auto& t : c.tracks) tracks.push_back(track_to_json(t));
  j["tracks"] = tracks;
  j["bs_position"] = {c.bs_position.x(), c.bs_position.y(), c.bs_position.z()};
  j["ue_height_m"] = c.ue_height_m;
  j["speed_mps"] = c.speed_mps;
  j["precoders"] = c.precoders;
  j["tzf_update_policy"] = policy_name(c.tzf_update_policy);
  j["doppler_mode"] = c.doppler_mode == DopplerMode::accumulate ? "accumulate" : "instantaneous";
  j["subarray_csi"] = c.subarray_csi == SubarrayCsi::observe ? "observe" : "gather";
  j["rank_policy"] = c.rank_policy == RankPolicy::fixed ? "fixed" : "adaptive";
  // threads only changes scheduling, never results, so it is not echoed.
  if (with_seed) j["seed"] = c.seed;
  return j;
}

}  // namespace

MethodSpec parse_method_spec(const std::string& text, TzfUpdatePolicy default_policy) {
  MethodSpec spec;
  spec.label = text;
  const auto colon = text.find(':');
  const std::string base = text.substr(0, colon);
  try {
    spec.method = parse_method(base);
  } catch (const ArgumentError&) {
    throw ConfigError("precoders: unknown method '" + text + "'");
  }
  spec.policy = default_policy;
  if (colon != std::string::npos) {
    if (spec.method != Method::TMRT && spec.method != Method::TZF) {
      throw ConfigError("precoders: update policy only applies to TMRT/TZF, got '" + text + "'");
    }
    spec.policy = parse_policy(text.substr(colon + 1), "precoders");
  }
  return spec;
}

ArrayGeometry ScenarioConfig::geometry() const {
  ArrayGeometry g;
  g.m_h = m_h;
  g.m_v = m_v;
  g.wavelength = wavelength();
  g.d_h = spacing_wavelengths * g.wavelength;
  g.d_v = spacing_wavelengths * g.wavelength;
  return g;
}

std::vector<MethodSpec> ScenarioConfig::method_specs() const {
  std::vector<MethodSpec> out;
  std::set<std::string> seen;
  for (const auto& p : precoders) {
    if (!seen.insert(p).second) throw ConfigError("precoders: duplicate entry '" + p + "'");
    out.push_back(parse_method_spec(p, tzf_update_policy));
  }
  return out;
}

std::vector<TrackSpec> default_tracks(const ScenarioConfig& cfg) {
  std::vector<TrackSpec> out;
  const Position3 ground(cfg.bs_position.x(), cfg.bs_position.y(), cfg.ue_height_m);
  for (std::size_t u = 0; u < cfg.ue_count; ++u) {
    // Offsets 0, +Δ, −Δ, +2Δ, ... about the BS axis; UE 0 is the reference track.
    const double steps = static_cast<double>((u + 1) / 2);
    const double sign = u % 2 == 1 ? 1.0 : -1.0;
    const double rot = sign * steps * cfg.track_spacing_deg * kDeg;
    if (cfg.track_kind == "circular") {
      const double radius = u == 0 ? cfg.track_radius_m : cfg.interferer_radius_m;
      out.push_back(TrackSpec::circle(ground, radius, kCircularStartPhase + rot, cfg.speed_mps));
    } else {
      const Eigen::Rotation2Dd r(rot);
      const Eigen::Vector2d s = r * Eigen::Vector2d(10.0, -40.0);
      const Eigen::Vector2d h = r * Eigen::Vector2d(0.0, 1.0);
      out.push_back(TrackSpec::line(ground + Position3(s.x(), s.y(), 0.0),
                                    Vector3(h.x(), h.y(), 0.0), cfg.speed_mps));
    }
  }
  return out;
}

void ScenarioConfig::validate() {
  warnings.clear();
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  if (m_h < 1 || m_v < 1) fail("array m_h and m_v must be >= 1");
  if (!(spacing_wavelengths > 0.0)) fail("array spacing_wavelengths must be > 0");
  if (!(carrier_hz > 0.0)) fail("array carrier_hz must be > 0");
  if (ue_count < 1) fail("ue_count must be >= 1");
  if (angle_spread_elevation_deg < 0.0 || angle_spread_azimuth_deg < 0.0) {
    fail("angle_spread_deg must be >= 0");
  }
  if (!(tti_len_s > 0.0)) fail("tti_len_s must be > 0");
  if (uplink_period_ttis < 1) fail("uplink_period_ttis must be >= 1");
  if (total_ttis < uplink_period_ttis) fail("total_ttis must be >= uplink_period_ttis");
  if (pilot_length != 0 && pilot_length < ue_count) fail("pilot_length must be >= ue_count");
  if (realizations < 1) fail("realizations must be >= 1");
  if (sumrate_realizations < 1) fail("sumrate_realizations must be >= 1");
  if (subspace_stride < 1) fail("subspace_stride must be >= 1");
  if (runtime_designs < 1) fail("runtime_designs must be >= 1");
  if (track_kind != "circular" && track_kind != "linear") {
    fail("track_kind must be 'circular' or 'linear'");
  }
  if (!(track_radius_m > 0.0)) fail("track_radius_m must be > 0");
  if (!(interferer_radius_m > 0.0)) fail("interferer_radius_m must be > 0");
  if (!(speed_mps > 0.0)) fail("speed_mps must be > 0");
  if (precoders.empty()) fail("precoders must not be empty");
  const auto specs = method_specs();

  if (tracks.empty()) tracks = default_tracks(*this);
  if (tracks.size() != ue_count) {
    fail("tracks has " + std::to_string(tracks.size()) + " entries but ue_count is " +
         std::to_string(ue_count));
  }
  for (auto& t : tracks) {
    t.speed_mps = speed_mps;
    try {
      t.validate();
    } catch (const ArgumentError& e) {
      fail(e.what());
    }
  }

  if (m_h * m_v < ue_count) {
    warnings.push_back("ZF infeasible: M_BS = " + std::to_string(m_h * m_v) + " < U = " +
                       std::to_string(ue_count));
  }
  for (const auto& s : specs) {
    if (s.method == Method::TZF && !tzf_feasible(m_h, m_v, ue_count)) {
      warnings.push_back("TZF infeasible: min(m_h, m_v) = " + std::to_string(std::min(m_h, m_v)) +
                         " must exceed U-1 = " + std::to_string(ue_count - 1));
      break;
    }
  }
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    ScenarioConfig c;
    c.validate();
    return c;
  }
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  ScenarioConfig c;
  if (j.is_null()) {
    c.validate();
    return c;
  }
  reject_unknown(j,
                 {"array", "ue_count", "k_factor_db", "snr_ul_db", "snr_dl_db", "angle_spread_deg",
                  "tti_len_s", "total_ttis", "uplink_period_ttis", "pilot_length", "realizations",
                  "sumrate_realizations", "subspace_stride", "runtime_designs", "track_kind",
                  "track_radius_m", "interferer_radius_m", "track_spacing_deg", "tracks", "bs_position", "ue_height_m", "speed_mps",
                  "precoders", "tzf_update_policy", "doppler_mode", "subarray_csi", "rank_policy",
                  "seed", "threads"},
                 "");
  if (j.contains("array")) {
    const json& a = j["array"];
    reject_unknown(a, {"m_h", "m_v", "spacing_wavelengths", "carrier_hz"}, "array");
    if (a.contains("m_h")) c.m_h = get_count(a["m_h"], "array.m_h");
    if (a.contains("m_v")) c.m_v = get_count(a["m_v"], "array.m_v");
    if (a.contains("spacing_wavelengths")) {
      c.spacing_wavelengths = get_real(a["spacing_wavelengths"], "array.spacing_wavelengths");
    }
    if (a.contains("carrier_hz")) c.carrier_hz = get_real(a["carrier_hz"], "array.carrier_hz");
  }
  auto real = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = get_real(j[key], key);
  };
  auto count = [&](const char* key, std::size_t& dst) {
    if (j.contains(key)) dst = get_count(j[key], key);
  };
  count("ue_count", c.ue_count);
  real("k_factor_db", c.k_factor_db);
  real("snr_ul_db", c.snr_ul_db);
  real("snr_dl_db", c.snr_dl_db);
  if (j.contains("angle_spread_deg")) {
    const json& s = j["angle_spread_deg"];
    if (s.is_number()) {
      c.angle_spread_elevation_deg = c.angle_spread_azimuth_deg = get_real(s, "angle_spread_deg");
    } else {
      reject_unknown(s, {"elevation", "azimuth"}, "angle_spread_deg");
      if (s.contains("elevation")) {
        c.angle_spread_elevation_deg = get_real(s["elevation"], "angle_spread_deg.elevation");
      }
      if (s.contains("azimuth")) {
        c.angle_spread_azimuth_deg = get_real(s["azimuth"], "angle_spread_deg.azimuth");
      }
    }
  }
  real("tti_len_s", c.tti_len_s);
  count("total_ttis", c.total_ttis);
  count("uplink_period_ttis", c.uplink_period_ttis);
  count("pilot_length", c.pilot_length);
  count("realizations", c.realizations);
  count("sumrate_realizations", c.sumrate_realizations);
  count("subspace_stride", c.subspace_stride);
  count("runtime_designs", c.runtime_designs);
  if (j.contains("track_kind")) c.track_kind = get_as<std::string>(j["track_kind"], "track_kind");
  real("track_radius_m", c.track_radius_m);
  real("interferer_radius_m", c.interferer_radius_m);
  real("track_spacing_deg", c.track_spacing_deg);
  real("ue_height_m", c.ue_height_m);
  real("speed_mps", c.speed_mps);
  if (j.contains("bs_position")) {
    const json& p = j["bs_position"];
    if (!p.is_array() || p.size() != 3) throw ConfigError("config key 'bs_position': expected [x, y, z]");
    c.bs_position = {get_real(p[0], "bs_position"), get_real(p[1], "bs_position"),
                     get_real(p[2], "bs_position")};
  }
  if (j.contains("tracks")) {
    const json& t = j["tracks"];
    if (!t.is_array()) throw ConfigError("config key 'tracks': expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) c.tracks.push_back(parse_track(t[i], i, c));
  }
  if (j.contains("precoders")) {
    c.precoders = get_as<std::vector<std::string>>(j["precoders"], "precoders");
  }
  if (j.contains("tzf_update_policy")) {
    c.tzf_update_policy = parse_policy(get_as<std::string>(j["tzf_update_policy"], "tzf_update_policy"),
                                       "tzf_update_policy");
  }
  if (j.contains("doppler_mode")) {
    const auto s = get_as<std::string>(j["doppler_mode"], "doppler_mode");
    if (s == "accumulate") {
      c.doppler_mode = DopplerMode::accumulate;
    } else if (s == "instantaneous") {
      c.doppler_mode = DopplerMode::instantaneous;
    } else {
      throw ConfigError("config key 'doppler_mode': expected 'accumulate' or 'instantaneous'");
    }
  }
  if (j.contains("subarray_csi")) {
    const auto s = get_as<std::string>(j["subarray_csi"], "subarray_csi");
    if (s == "observe") {
      c.subarray_csi = SubarrayCsi::observe;
    } else if (s == "gather") {
      c.subarray_csi = SubarrayCsi::gather;
    } else {
      throw ConfigError("config key 'subarray_csi': expected 'observe' or 'gather'");
    }
  }
  if (j.contains("rank_policy")) {
    const auto s = get_as<std::string>(j["rank_policy"], "rank_policy");
    if (s == "fixed") {
      c.rank_policy = RankPolicy::fixed;
    } else if (s == "adaptive") {
      c.rank_policy = RankPolicy::adaptive;
    } else {
      throw ConfigError("config key 'rank_policy': expected 'fixed' or 'adaptive'");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("config key 'seed': expected an integer");
    c.seed = get_as<std::uint64_t>(j["seed"], "seed");
  }
  count("threads", c.threads);
  c.validate();
  return c;
}

ScenarioConfig load_config(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ScenarioConfig load_config(const std::string& path) {
  if (path == "-") return load_config(std::cin);
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return load_config(f);
}

std::string config_to_json(const ScenarioConfig& cfg, int indent) {
  return to_json_object(cfg, true).dump(indent);
}

std::string config_fingerprint(const ScenarioConfig& cfg) {
  const std::string canon = to_json_object(cfg, false).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

ChannelModel make_channel_model(const ScenarioConfig& cfg) {
  ChannelModel m;
  m.geometry = cfg.geometry();
  m.k_factor = db_to_linear(cfg.k_factor_db);
  m.sigma_elevation = cfg.angle_spread_elevation_deg * kDeg;
  m.sigma_azimuth = cfg.angle_spread_azimuth_deg * kDeg;
  m.tti_len = cfg.tti_len_s;
  m.doppler_mode = cfg.doppler_mode;
  m.bs_position = cfg.bs_position;
  m.nlos_covariance = CovarianceFactor::identity(m.geometry.total());
  return m;
}

}  // namespace mimo
