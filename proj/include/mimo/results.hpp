#pragma once

#include <string>

#include "mimo/experiments.hpp"

namespace mimo {

enum class OutputFormat { csv, json };

/// Throws ArgumentError for anything other than "csv" or "json".
OutputFormat parse_format(const std::string& name);

/// Per-record curve table. Headers:
///   subspace: tti,label,chordal_sq
///   sumrate:  tti,method,sum_rate_bps_hz
///   runtime:  method,sample_idx,seconds
std::string to_csv(const ExperimentResult& result);

/// Config, fingerprint, seed, summary statistics, warnings and records.
std::string to_json(const ExperimentResult& result);

/// Writes the rendering to `path` ("-" for stdout). I/O failures raise
/// mimo::Error naming the path.
void emit_results(const ExperimentResult& result, OutputFormat format, const std::string& path);

}  // namespace mimo
