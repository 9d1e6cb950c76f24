#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mimo/config.hpp"
#include "mimo/metrics.hpp"

namespace mimo {

enum class ExperimentKind { subspace, sumrate, runtime };

std::string_view to_string(ExperimentKind k);

struct SubspaceRecord {
  std::size_t tti = 0;
  std::string label;
  double chordal_sq = 0.0;
};

struct SumrateRecord {
  std::size_t tti = 0;
  std::string method;
  double sum_rate = 0.0;  // bits/s/Hz, mean over realizations
};

struct RuntimeRecord {
  std::string method;
  std::size_t sample_idx = 0;
  double seconds = 0.0;
};

/// Per-method (or per-label) summary statistics.
struct Summary {
  std::string name;
  double mean = 0.0;
  double ci_half_width = 0.0;  // 95%, across realizations
  double max = 0.0;
  double median = 0.0;         // runtime only
  std::size_t samples = 0;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::subspace;
  std::uint64_t seed = 0;
  std::string fingerprint;
  std::string config_json;

  std::vector<SubspaceRecord> subspace;
  std::vector<SumrateRecord> sumrate;
  std::vector<RuntimeRecord> runtime;

  std::vector<Summary> summary;
  /// Sum-rate only: each method's time-averaged sum-rate per realization, so
  /// methods can be compared pairwise (all methods share channel draws).
  std::map<std::string, std::vector<double>> per_realization;
  std::vector<RuntimeEcdf> ecdfs;
  std::vector<std::string> warnings;

  const Summary* find_summary(const std::string& name) const;
};

/// Labels emitted by run_subspace.
inline constexpr const char* kSubspaceLabels[] = {
    "full", "horizontal", "vertical", "interference_full", "interference_horizontal",
    "interference_vertical"};

/// Chordal distance of UE 1's dominant channel eigenvectors (full, horizontal,
/// vertical) and of its interference Gram column-spaces, relative to TTI 0.
/// Each sampled TTI averages `realizations` independent draws at the track's
/// mean geometry.
ExperimentResult run_subspace(const ScenarioConfig& cfg);

/// TDD sum-rate: CSI and designs at every uplink TTI, held through the
/// following downlink TTIs, evaluated on the true channels at every TTI.
ExperimentResult run_sumrate(const ScenarioConfig& cfg);

/// ECDF of single-UE precoder design time on i.i.d. channel draws.
ExperimentResult run_runtime(const ScenarioConfig& cfg);

/// TTIs at which pilots are sent: 0, P, 2P, ... below total_ttis.
std::vector<std::size_t> uplink_schedule(const ScenarioConfig& cfg);

}  // namespace mimo
