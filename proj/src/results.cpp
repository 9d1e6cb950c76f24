#include "mimo/results.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ArgumentError("unknown output format '" + name + "' (expected csv or json)");
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  switch (r.kind) {
    case ExperimentKind::subspace:
      os << "tti,label,chordal_sq\n";
      for (const auto& rec : r.subspace) os << rec.tti << ',' << rec.label << ',' << num(rec.chordal_sq) << '\n';
      break;
    case ExperimentKind::sumrate:
      os << "tti,method,sum_rate_bps_hz\n";
      for (const auto& rec : r.sumrate) os << rec.tti << ',' << rec.method << ',' << num(rec.sum_rate) << '\n';
      break;
    case ExperimentKind::runtime:
      os << "method,sample_idx,seconds\n";
      for (const auto& rec : r.runtime) os << rec.method << ',' << rec.sample_idx << ',' << num(rec.seconds) << '\n';
      break;
  }
  return os.str();
}

std::string to_json(const ExperimentResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = std::string(to_string(r.kind));
  j["seed"] = r.seed;
  j["fingerprint"] = r.fingerprint;
  j["config"] = ordered_json::parse(r.config_json);
  ordered_json summary = ordered_json::array();
  for (const auto& s : r.summary) {
    ordered_json e;
    e["name"] = s.name;
    e["mean"] = s.mean;
    if (r.kind == ExperimentKind::sumrate) e["ci95_half_width"] = s.ci_half_width;
    if (r.kind == ExperimentKind::runtime) e["median"] = s.median;
    e["max"] = s.max;
    e["samples"] = s.samples;
    summary.push_back(std::move(e));
  }
  j["summary"] = std::move(summary);
  j["warnings"] = r.warnings;
  ordered_json records = ordered_json::array();
  switch (r.kind) {
    case ExperimentKind::subspace:
      for (const auto& rec : r.subspace) {
        records.push_back({{"tti", rec.tti}, {"label", rec.label}, {"chordal_sq", rec.chordal_sq}});
      }
      break;
    case ExperimentKind::sumrate:
      for (const auto& rec : r.sumrate) {
        records.push_back({{"tti", rec.tti}, {"method", rec.method}, {"sum_rate_bps_hz", rec.sum_rate}});
      }
      break;
    case ExperimentKind::runtime:
      for (const auto& rec : r.runtime) {
        records.push_back({{"method", rec.method}, {"sample_idx", rec.sample_idx}, {"seconds", rec.seconds}});
      }
      break;
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

void emit_results(const ExperimentResult& result, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::csv ? to_csv(result) : to_json(result);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error("failed writing results to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open output file '" + path + "'");
  f << text;
  f.close();
  if (!f) throw Error("failed writing output file '" + path + "'");
}

}  // namespace mimo
