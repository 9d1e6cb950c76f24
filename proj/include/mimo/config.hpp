#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimo/channel.hpp"
#include "mimo/mobility.hpp"
#include "mimo/precoding.hpp"

namespace mimo {

/// When the tensor precoders refresh their vertical factor.
///   both:          horizontal and vertical factors at every uplink slot.
///   vertical_once: vertical factor from the first uplink slot only.
enum class TzfUpdatePolicy { both, vertical_once };

/// Where the tensor precoders get their sub-array CSI.
///   observe: LS on the M_H + M_V − 1 sub-array rows of the pilot observation.
///   gather:  gathered from the full-array LS estimate.
enum class SubarrayCsi { observe, gather };

/// One entry of the precoder list: a method plus, for TMRT/TZF, the vertical
/// update policy. The label is what appears in result files.
struct MethodSpec {
  Method method = Method::MRT;
  TzfUpdatePolicy policy = TzfUpdatePolicy::both;
  std::string label;
};

/// Parses "MRT", "ZF", "TMRT", "TZF", or "TMRT:both" / "TZF:vertical_once".
/// A bare tensor name takes `default_policy`.
MethodSpec parse_method_spec(const std::string& text, TzfUpdatePolicy default_policy);

struct ScenarioConfig {
  // array
  std::size_t m_h = 16;
  std::size_t m_v = 16;
  double spacing_wavelengths = 0.5;
  double carrier_hz = 6e9;

  std::size_t ue_count = 3;
  double k_factor_db = 20.0;
  double snr_ul_db = 20.0;
  double snr_dl_db = 10.0;
  double angle_spread_elevation_deg = 1.0;
  double angle_spread_azimuth_deg = 1.0;

  double tti_len_s = 1e-3;
  std::size_t total_ttis = 1000;
  std::size_t uplink_period_ttis = 250;
  std::size_t pilot_length = 0;  // 0: equal to ue_count

  std::size_t realizations = 256;          // subspace: draws per sampled TTI
  std::size_t sumrate_realizations = 64;   // sumrate: Monte-Carlo runs
  std::size_t subspace_stride = 1;
  std::size_t runtime_designs = 1000;

  std::string track_kind = "circular";  // circular | linear
  double track_radius_m = 20.0;         // default circular track of UE 0
  double interferer_radius_m = 35.0;    // shared by the other default circular tracks
  double track_spacing_deg = 40.0;      // rotation between default tracks
  std::vector<TrackSpec> tracks;        // per UE; filled from defaults if empty
  Position3 bs_position{0.0, 0.0, 25.0};
  double ue_height_m = 1.5;
  double speed_mps = 30.0;

  std::vector<std::string> precoders{"MRT", "TMRT", "ZF", "TZF"};
  TzfUpdatePolicy tzf_update_policy = TzfUpdatePolicy::both;
  DopplerMode doppler_mode = DopplerMode::accumulate;
  SubarrayCsi subarray_csi = SubarrayCsi::observe;
  RankPolicy rank_policy = RankPolicy::fixed;

  std::uint64_t seed = 1;
  std::size_t threads = 1;  // 0: hardware concurrency

  std::vector<std::string> warnings;  // filled by validate()

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  ArrayGeometry geometry() const;
  std::size_t effective_pilot_length() const { return pilot_length ? pilot_length : ue_count; }
  std::vector<MethodSpec> method_specs() const;

  /// Fills default tracks and checks every invariant. Throws ConfigError
  /// naming the violated constraint; feasibility problems become warnings.
  void validate();
};

/// Default per-UE tracks, UE u rotated about the BS axis by 0, +Δ, −Δ, +2Δ, ...
/// (Δ = track_spacing_deg). Circular: circles around the BS ground projection
/// starting at azimuth −120°; UE 0 uses track_radius_m, all other UEs share
/// interferer_radius_m and therefore one elevation. Linear: rotated copies of
/// the line from (10, −40) heading +y, all at a common distance from the BS.
/// The defaults keep every UE on the y < 0 side of the array for 1000 TTIs.
std::vector<TrackSpec> default_tracks(const ScenarioConfig& cfg);

/// Parses and validates a JSON document. Missing keys take their defaults;
/// unknown keys are rejected. Throws ConfigError with line/column or key.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);  // "-" reads stdin
ScenarioConfig load_config(std::istream& in);

/// Canonical JSON (sorted keys, explicit tracks) of a config.
std::string config_to_json(const ScenarioConfig& cfg, int indent = -1);

/// 16-hex-digit FNV-1a hash of the canonical JSON, excluding seed and threads.
std::string config_fingerprint(const ScenarioConfig& cfg);

/// ChannelModel matching the config (K in linear scale, spreads in radians).
ChannelModel make_channel_model(const ScenarioConfig& cfg);

}  // namespace mimo
