// mimo_sim: runs the subspace, sum-rate and runtime experiments.
//
//   mimo_sim subspace --config scenario.json --seed 7 --out subspace.csv
//   mimo_sim sumrate  --format json --out sumrate.json
//   mimo_sim defaults
//
// Exit codes: 0 success, 2 config error, 3 infeasible geometry,
// 4 numerical degeneracy, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mimo/mimo.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kInfeasible = 3, kDegenerate = 4 };

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out = "-";
  std::string format = "csv";
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "Scenario JSON ('-' for stdin); defaults if omitted");
  cmd->add_option("--seed", o.seed, "Override the config seed");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

mimo::ScenarioConfig resolve_config(const RunOptions& o) {
  mimo::ScenarioConfig cfg = o.config_path.empty() ? mimo::parse_config("{}")
                                                    : mimo::load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  return cfg;
}

void print_summary(const mimo::ExperimentResult& r) {
  std::cerr << to_string(r.kind) << " fingerprint=" << r.fingerprint << " seed=" << r.seed << '\n';
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& s : r.summary) {
    std::cerr << "  " << s.name << ": mean=" << s.mean;
    if (r.kind == mimo::ExperimentKind::sumrate) std::cerr << " ±" << s.ci_half_width;
    if (r.kind == mimo::ExperimentKind::runtime) std::cerr << " median=" << s.median;
    std::cerr << " max=" << s.max << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Massive-MIMO tensor precoding link-level simulator"};
  app.require_subcommand(1);

  RunOptions subspace_opts, sumrate_opts, runtime_opts;
  auto* subspace = app.add_subcommand("subspace", "Chordal-distance evolution of channel subspaces");
  auto* sumrate = app.add_subcommand("sumrate", "TDD sum-rate of the configured precoders");
  auto* runtime = app.add_subcommand("runtime", "Empirical CDF of precoder design time");
  auto* defaults = app.add_subcommand("defaults", "Print the default scenario as JSON");
  add_run_options(subspace, subspace_opts);
  add_run_options(sumrate, sumrate_opts);
  add_run_options(runtime, runtime_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*defaults) {
      std::cout << mimo::config_to_json(mimo::parse_config("{}"), 2) << '\n';
      return kOk;
    }
    mimo::ExperimentResult result;
    const RunOptions* opts = nullptr;
    if (*subspace) {
      opts = &subspace_opts;
      result = mimo::run_subspace(resolve_config(*opts));
    } else if (*sumrate) {
      opts = &sumrate_opts;
      result = mimo::run_sumrate(resolve_config(*opts));
    } else {
      opts = &runtime_opts;
      result = mimo::run_runtime(resolve_config(*opts));
    }
    mimo::emit_results(result, mimo::parse_format(opts->format), opts->out);
    print_summary(result);
  } catch (const mimo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const mimo::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const mimo::DegenerateError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
