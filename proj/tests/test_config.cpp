#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mimo/config.hpp"
#include "mimo/errors.hpp"

using namespace mimo;

namespace {
bool mentions(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}
}  // namespace

TEST_CASE("empty document gives the default scenario") {
  const ScenarioConfig c = parse_config("{}");
  CHECK(c.m_h == 16);
  CHECK(c.m_v == 16);
  CHECK(c.spacing_wavelengths == 0.5);
  CHECK(c.carrier_hz == 6e9);
  CHECK(c.ue_count == 3);
  CHECK(c.k_factor_db == 20.0);
  CHECK(c.snr_ul_db == 20.0);
  CHECK(c.snr_dl_db == 10.0);
  CHECK(c.angle_spread_elevation_deg == 1.0);
  CHECK(c.angle_spread_azimuth_deg == 1.0);
  CHECK(c.tti_len_s == 1e-3);
  CHECK(c.total_ttis == 1000);
  CHECK(c.uplink_period_ttis == 250);
  CHECK(c.realizations == 256);
  CHECK(c.sumrate_realizations == 64);
  CHECK(c.speed_mps == 30.0);
  CHECK((c.bs_position - Position3(0, 0, 25)).norm() == 0.0);
  CHECK(c.ue_height_m == 1.5);
  CHECK(c.tracks.size() == 3);
  CHECK(c.warnings.empty());
  CHECK(c.geometry().d_h == doctest::Approx(299792458.0 / 6e9 / 2));
  CHECK(parse_config("").m_h == 16);
}

TEST_CASE("default circular tracks: interferers share one elevation") {
  const ScenarioConfig c = parse_config("{}");
  auto elevation = [&](const TrackSpec& t, std::size_t n) {
    return ue_geometry(t, c.bs_position, n, c.tti_len_s).angles.mean_elevation;
  };
  for (std::size_t n : {0u, 400u, 999u}) {
    CHECK(std::abs(elevation(c.tracks[1], n) - elevation(c.tracks[2], n)) < 1e-12);
    CHECK(std::abs(elevation(c.tracks[0], n) - elevation(c.tracks[0], 0)) < 1e-12);
    for (const auto& t : c.tracks) {
      CHECK(ue_geometry(t, c.bs_position, n, c.tti_len_s).position.y() < 0.0);
    }
  }
}

TEST_CASE("default linear tracks start from the reference line") {
  const ScenarioConfig c = parse_config(R"({"track_kind": "linear"})");
  REQUIRE(c.tracks.size() == 3);
  CHECK((c.tracks[0].start - Position3(10, -40, 1.5)).norm() < 1e-12);
  CHECK((c.tracks[0].heading - Vector3(0, 1, 0)).norm() < 1e-12);
  for (const auto& t : c.tracks) CHECK(t.kind == TrackSpec::Kind::linear);
}

TEST_CASE("validation errors name the invariant") {
  try {
    parse_config(R"({"uplink_period_ttis": 0})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e.what(), "uplink_period_ttis"));
  }
  CHECK_THROWS_AS(parse_config(R"({"ue_count": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"track_kind": "spiral"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"precoders": ["MMSE"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"k_factor_db": "high"})"), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
  try {
    parse_config(R"({"array": {"m_h": 4}, "antennas": 3})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e.what(), "antennas"));
  }
}

TEST_CASE("parse errors report a location") {
  try {
    parse_config("{\n  \"m_h\": 4,\n  oops\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e.what(), "line 3"));
  }
}

TEST_CASE("infeasible TZF geometry warns at load time") {
  const ScenarioConfig c = parse_config(R"({"array": {"m_h": 2}, "ue_count": 3, "precoders": ["ZF", "TZF"]})");
  REQUIRE(c.warnings.size() == 1);
  CHECK(mentions(c.warnings[0], "TZF"));
  CHECK(parse_config(R"({"array": {"m_h": 2}, "precoders": ["ZF"]})").warnings.empty());
}

TEST_CASE("explicit tracks and angle spreads") {
  const ScenarioConfig c = parse_config(R"({
    "ue_count": 2,
    "angle_spread_deg": {"elevation": 0.5, "azimuth": 2},
    "tracks": [
      {"kind": "circular", "radius_m": 12, "initial_phase_deg": -90, "direction": -1},
      {"kind": "linear", "start": [0, -30], "heading": [3, 4]}
    ]})");
  CHECK(c.angle_spread_elevation_deg == 0.5);
  CHECK(c.angle_spread_azimuth_deg == 2.0);
  CHECK(c.tracks[0].radius_m == 12.0);
  CHECK(c.tracks[0].direction == -1);
  CHECK(c.tracks[0].initial_phase_rad == doctest::Approx(-M_PI / 2));
  CHECK((c.tracks[1].heading - Vector3(0.6, 0.8, 0)).norm() < 1e-12);
  CHECK(c.tracks[1].start.z() == 1.5);
  CHECK_THROWS_AS(parse_config(R"({"ue_count": 2, "tracks": [{"kind": "linear", "start": [0,0], "heading": [0,1]}]})"),
                  ConfigError);
}

TEST_CASE("method specs") {
  const auto m = parse_method_spec("TZF:vertical_once", TzfUpdatePolicy::both);
  CHECK(m.method == Method::TZF);
  CHECK(m.policy == TzfUpdatePolicy::vertical_once);
  CHECK(m.label == "TZF:vertical_once");
  CHECK(parse_method_spec("TMRT", TzfUpdatePolicy::vertical_once).policy ==
        TzfUpdatePolicy::vertical_once);
  CHECK(parse_method_spec("ZF", TzfUpdatePolicy::both).label == "ZF");
  CHECK_THROWS_AS(parse_method_spec("ZF:vertical_once", TzfUpdatePolicy::both), ConfigError);
}

TEST_CASE("canonical json round-trips and fingerprint ignores the seed") {
  ScenarioConfig a = parse_config(R"({"array": {"m_h": 8}, "seed": 5})");
  const ScenarioConfig b = parse_config(config_to_json(a));
  CHECK(config_to_json(a) == config_to_json(b));
  ScenarioConfig c = a;
  c.seed = 99;
  CHECK(config_fingerprint(a) == config_fingerprint(c));
  c.m_v = 8;
  CHECK(config_fingerprint(a) != config_fingerprint(c));
  CHECK(config_fingerprint(a).size() == 16);
}

TEST_CASE("load_config from a stream and a missing path") {
  std::istringstream in(R"({"snr_dl_db": 3})");
  CHECK(load_config(in).snr_dl_db == 3.0);
  CHECK_THROWS_AS(load_config(std::string("/nonexistent/dir/cfg.json")), ConfigError);
}

TEST_CASE("make_channel_model converts units") {
  const ScenarioConfig c = parse_config(R"({"k_factor_db": 10, "angle_spread_deg": 2})");
  const ChannelModel m = make_channel_model(c);
  CHECK(m.k_factor == doctest::Approx(10.0));
  CHECK(m.sigma_elevation == doctest::Approx(2.0 * M_PI / 180.0));
  CHECK(m.geometry.total() == 256);
}
