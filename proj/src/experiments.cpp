#include "mimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "mimo/channel.hpp"
#include "mimo/csi.hpp"
#include "mimo/errors.hpp"
#include "mimo/rng.hpp"

namespace mimo {

namespace {

// Stream purposes; part of every stream key so draws never collide.
enum StreamPurpose : std::uint64_t {
  kAngles = 1,
  kNlos = 2,
  kUplinkNoise = 3,
  kSubspaceAngles = 10,
  kSubspaceNlos = 11,
  kRuntimeDraws = 20,
};

constexpr double kNoiseVariance = 1.0;

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index writes
/// only its own output slot, so results do not depend on the worker count.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

ExperimentResult make_result(ExperimentKind kind, const ScenarioConfig& cfg) {
  ExperimentResult r;
  r.kind = kind;
  r.seed = cfg.seed;
  r.fingerprint = config_fingerprint(cfg);
  r.config_json = config_to_json(cfg);
  r.warnings = cfg.warnings;
  return r;
}

ScenarioConfig validated(ScenarioConfig cfg) {
  cfg.validate();
  return cfg;
}

CMatrix rows_of(const CMatrix& columns, const std::vector<std::size_t>& idx) {
  CMatrix out(static_cast<Eigen::Index>(idx.size()), columns.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = columns.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

CMatrix dominant_basis(const CMatrix& columns, std::size_t k) {
  const CMatrix cov = sample_covariance(columns);
  return dominant_eigenvectors(cov, std::min<std::size_t>(k, static_cast<std::size_t>(cov.rows())));
}

/// Drops methods the geometry cannot support, with a warning for each.
std::vector<MethodSpec> feasible_methods(const ScenarioConfig& cfg, std::vector<std::string>& warnings) {
  std::vector<MethodSpec> out;
  for (const auto& s : cfg.method_specs()) {
    if (s.method == Method::ZF && cfg.m_h * cfg.m_v < cfg.ue_count) {
      warnings.push_back(s.label + " skipped: M_BS < U");
      continue;
    }
    if (s.method == Method::TZF && !tzf_feasible(cfg.m_h, cfg.m_v, cfg.ue_count)) {
      warnings.push_back(s.label + " skipped: min(M_H, M_V) <= U-1");
      continue;
    }
    out.push_back(s);
  }
  if (out.empty()) throw InfeasibleError("no configured precoder is feasible for this array");
  return out;
}

/// Precoders of one method for all UEs, plus the state a vertical-once tensor
/// design keeps from the first uplink slot.
struct MethodState {
  MethodSpec spec;
  std::vector<CVector> f;
  bool vertical_initialized = false;
  std::vector<CVector> held_h_v;
  std::vector<CMatrix> held_k_v;
};

struct UplinkCsi {
  std::vector<CVector> full;
  std::vector<CVector> h;
  std::vector<CVector> v;
};

void design(MethodState& st, const UplinkCsi& csi, const std::vector<double>& budgets,
            const ProjectorOptions& opts) {
  const std::size_t users = csi.full.size();
  st.f.resize(users);
  const bool hold_vertical = st.spec.policy == TzfUpdatePolicy::vertical_once;
  const bool first = !st.vertical_initialized;
  if (hold_vertical && first) {
    st.held_h_v = csi.v;
    if (st.spec.method == Method::TZF) {
      st.held_k_v.resize(users);
      for (std::size_t u = 0; u < users; ++u) {
        st.held_k_v[u] = projector(interference_basis(interference_matrix(csi.v, u), opts));
      }
    }
  }
  st.vertical_initialized = true;

  for (std::size_t u = 0; u < users; ++u) {
    const double e = budgets[u];
    switch (st.spec.method) {
      case Method::MRT:
        st.f[u] = mrt(csi.full[u], e).f;
        break;
      case Method::ZF:
        st.f[u] = zf(csi.full[u], interference_matrix(csi.full, u), e, opts).f;
        break;
      case Method::TMRT:
        st.f[u] = tmrt(csi.h[u], hold_vertical ? st.held_h_v[u] : csi.v[u], e).f;
        break;
      case Method::TZF:
        if (hold_vertical) {
          ProjectorPair k{projector(interference_basis(interference_matrix(csi.h, u), opts)),
                          st.held_k_v[u]};
          st.f[u] = tzf(csi.h[u], st.held_h_v[u], k, e).f;
        } else {
          st.f[u] = tzf(csi.h[u], csi.v[u], interference_matrix(csi.h, u),
                        interference_matrix(csi.v, u), e, opts)
                        .f;
        }
        break;
    }
  }
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::subspace: return "subspace";
    case ExperimentKind::sumrate: return "sumrate";
    case ExperimentKind::runtime: return "runtime";
  }
  return "?";
}

const Summary* ExperimentResult::find_summary(const std::string& name) const {
  for (const auto& s : summary) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<std::size_t> uplink_schedule(const ScenarioConfig& cfg) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < cfg.total_ttis; t += cfg.uplink_period_ttis) out.push_back(t);
  return out;
}

ExperimentResult run_subspace(const ScenarioConfig& in) {
  const ScenarioConfig cfg = validated(in);
  ExperimentResult result = make_result(ExperimentKind::subspace, cfg);
  const ChannelModel model = make_channel_model(cfg);
  const SubArrayIndexSets idx = subarray_index_sets(model.geometry);
  const std::size_t users = cfg.ue_count;
  const std::size_t n_real = cfg.realizations;
  const Eigen::Index m = static_cast<Eigen::Index>(model.geometry.total());
  const std::size_t labels = users >= 2 ? 6 : 3;

  std::vector<std::size_t> ttis;
  for (std::size_t t = 0; t < cfg.total_ttis; t += cfg.subspace_stride) ttis.push_back(t);

  // bases[i][label]: orthonormal basis at sampled TTI i.
  std::vector<std::vector<CMatrix>> bases(ttis.size());
  parallel_for(ttis.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t t = ttis[i];
    std::vector<CMatrix> cols(users, CMatrix(m, static_cast<Eigen::Index>(n_real)));
    for (std::size_t u = 0; u < users; ++u) {
      const UEState geo = ue_geometry(cfg.tracks[u], cfg.bs_position, t, cfg.tti_len_s);
      RngStream arng(cfg.seed, stream_key({kSubspaceAngles, t, u}));
      RngStream nrng(cfg.seed, stream_key({kSubspaceNlos, t, u}));
      for (std::size_t r = 0; r < n_real; ++r) {
        // The Doppler phasor is a per-draw global phase; it does not change
        // second-order statistics, so it is left at zero here.
        cols[u].col(static_cast<Eigen::Index>(r)) = draw_channel(model, geo, 0.0, arng, nrng).h;
      }
    }
    auto& b = bases[i];
    b.push_back(dominant_basis(cols[0], 1));
    b.push_back(dominant_basis(rows_of(cols[0], idx.horizontal), 1));
    b.push_back(dominant_basis(rows_of(cols[0], idx.vertical), 1));
    if (labels == 6) {
      // Averaged interference Gram of UE 1: Σ_{j≠1} E[h_j h_jᴴ].
      CMatrix interferers(m, static_cast<Eigen::Index>((users - 1) * n_real));
      for (std::size_t u = 1; u < users; ++u) {
        interferers.middleCols(static_cast<Eigen::Index>((u - 1) * n_real),
                               static_cast<Eigen::Index>(n_real)) = cols[u];
      }
      b.push_back(dominant_basis(interferers, users - 1));
      b.push_back(dominant_basis(rows_of(interferers, idx.horizontal), users - 1));
      b.push_back(dominant_basis(rows_of(interferers, idx.vertical), users - 1));
    }
  });

  std::vector<std::vector<double>> series(labels);
  for (std::size_t i = 0; i < ttis.size(); ++i) {
    for (std::size_t l = 0; l < labels; ++l) {
      const double d = subspace_chordal_distance_sq(bases[0][l], bases[i][l]);
      series[l].push_back(d);
      result.subspace.push_back({ttis[i], kSubspaceLabels[l], d});
    }
  }
  for (std::size_t l = 0; l < labels; ++l) {
    Summary s;
    s.name = kSubspaceLabels[l];
    s.mean = mean_ci(series[l]).mean;
    s.max = *std::max_element(series[l].begin(), series[l].end());
    s.samples = series[l].size();
    result.summary.push_back(s);
  }
  return result;
}

ExperimentResult run_sumrate(const ScenarioConfig& in) {
  const ScenarioConfig cfg = validated(in);
  ExperimentResult result = make_result(ExperimentKind::sumrate, cfg);
  const std::vector<MethodSpec> specs = feasible_methods(cfg, result.warnings);
  const ChannelModel model = make_channel_model(cfg);
  const SubArrayIndexSets idx = subarray_index_sets(model.geometry);
  const PilotMatrix pilots = generate_pilots(cfg.ue_count, cfg.effective_pilot_length());
  const double pilot_power = db_to_linear(cfg.snr_ul_db) * kNoiseVariance;
  const std::vector<double> budgets =
      allocate_power(db_to_linear(cfg.snr_dl_db) * kNoiseVariance, cfg.ue_count);
  const ProjectorOptions opts{cfg.rank_policy, 1e-10};
  const std::size_t users = cfg.ue_count;
  const std::size_t n_ttis = cfg.total_ttis;
  const std::size_t n_methods = specs.size();
  const std::size_t n_real = cfg.sumrate_realizations;

  // rates[r][k * n_ttis + t]
  std::vector<std::vector<double>> rates(n_real);
  parallel_for(n_real, cfg.threads, [&](std::size_t r) {
    std::vector<ChannelProcess> procs;
    procs.reserve(users);
    for (std::size_t u = 0; u < users; ++u) {
      procs.emplace_back(model, cfg.tracks[u], RngStream(cfg.seed, stream_key({kAngles, r, u})),
                         RngStream(cfg.seed, stream_key({kNlos, r, u})));
    }
    RngStream noise(cfg.seed, stream_key({kUplinkNoise, r}));
    std::vector<MethodState> states;
    for (const auto& s : specs) states.push_back({s, {}, false, {}, {}});

    auto& out = rates[r];
    out.assign(n_methods * n_ttis, 0.0);
    std::vector<CVector> h(users);
    for (std::size_t t = 0; t < n_ttis; ++t) {
      for (std::size_t u = 0; u < users; ++u) h[u] = procs[u].step(t).h;
      if (t % cfg.uplink_period_ttis == 0) {
        const CMatrix x = uplink_receive(h, pilots, pilot_power, kNoiseVariance, noise);
        UplinkCsi csi;
        for (std::size_t u = 0; u < users; ++u) {
          const CVector p = pilots.pilot(u);
          csi.full.push_back(ls_estimate(x, p, pilot_power));
          if (cfg.subarray_csi == SubarrayCsi::observe) {
            auto [hh, hv] = ls_estimate_subarrays(x, idx, p, pilot_power);
            csi.h.push_back(std::move(hh));
            csi.v.push_back(std::move(hv));
          } else {
            csi.h.push_back(extract_subarray(csi.full.back(), idx.horizontal));
            csi.v.push_back(extract_subarray(csi.full.back(), idx.vertical));
          }
        }
        for (auto& st : states) design(st, csi, budgets, opts);
      }
      for (std::size_t k = 0; k < n_methods; ++k) {
        out[k * n_ttis + t] = sum_rate(h, states[k].f, kNoiseVariance);
      }
    }
  });

  for (std::size_t t = 0; t < n_ttis; ++t) {
    for (std::size_t k = 0; k < n_methods; ++k) {
      double acc = 0.0;
      for (std::size_t r = 0; r < n_real; ++r) acc += rates[r][k * n_ttis + t];
      result.sumrate.push_back({t, specs[k].label, acc / static_cast<double>(n_real)});
    }
  }
  for (std::size_t k = 0; k < n_methods; ++k) {
    std::vector<double> per_real(n_real);
    for (std::size_t r = 0; r < n_real; ++r) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n_ttis; ++t) acc += rates[r][k * n_ttis + t];
      per_real[r] = acc / static_cast<double>(n_ttis);
    }
    const MeanCi ci = mean_ci(per_real);
    Summary s;
    s.name = specs[k].label;
    s.mean = ci.mean;
    s.ci_half_width = ci.half_width;
    s.max = *std::max_element(per_real.begin(), per_real.end());
    s.samples = n_real;
    result.summary.push_back(s);
    result.per_realization[specs[k].label] = std::move(per_real);
  }
  return result;
}

ExperimentResult run_runtime(const ScenarioConfig& in) {
  const ScenarioConfig cfg = validated(in);
  ExperimentResult result = make_result(ExperimentKind::runtime, cfg);
  const std::vector<MethodSpec> specs = feasible_methods(cfg, result.warnings);
  const ArrayGeometry geom = cfg.geometry();
  const SubArrayIndexSets idx = subarray_index_sets(geom);
  const std::size_t users = cfg.ue_count;
  const std::size_t n = cfg.runtime_designs;
  const double e = db_to_linear(cfg.snr_dl_db) * kNoiseVariance / static_cast<double>(users);
  const ProjectorOptions opts{cfg.rank_policy, 1e-10};

  // Channel draws and sub-array gathers happen outside the timed region.
  struct Draw {
    std::vector<CVector> full, h, v;
  };
  std::vector<Draw> draws(n);
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(cfg.seed, stream_key({kRuntimeDraws, i}));
    for (std::size_t u = 0; u < users; ++u) {
      draws[i].full.push_back(complex_gaussian(rng, geom.total()));
      draws[i].h.push_back(extract_subarray(draws[i].full.back(), idx.horizontal));
      draws[i].v.push_back(extract_subarray(draws[i].full.back(), idx.vertical));
    }
  }

  std::set<Method> timed;
  volatile double sink = 0.0;
  for (const auto& s : specs) {
    if (!timed.insert(s.method).second) continue;
    const std::string label(to_string(s.method));
    auto procedure = [&, method = s.method](std::size_t i) {
      const Draw& d = draws[i % n];
      Precoder p;
      switch (method) {
        case Method::MRT: p = mrt(d.full[0], e); break;
        case Method::ZF: p = zf(d.full[0], interference_matrix(d.full, 0), e, opts); break;
        case Method::TMRT: p = tmrt(d.h[0], d.v[0], e); break;
        case Method::TZF:
          p = tzf(d.h[0], d.v[0], interference_matrix(d.h, 0), interference_matrix(d.v, 0), e, opts);
          break;
      }
      sink = sink + std::real(p.f(0));
    };
    RuntimeEcdf ecdf = measure_runtime(label, procedure, n);
    for (std::size_t i = 0; i < ecdf.samples.size(); ++i) {
      result.runtime.push_back({label, i, ecdf.samples[i]});
    }
    Summary sm;
    sm.name = label;
    sm.mean = mean_ci(ecdf.samples).mean;
    sm.median = ecdf.median();
    sm.max = ecdf.samples.back();
    sm.samples = ecdf.samples.size();
    result.summary.push_back(sm);
    result.ecdfs.push_back(std::move(ecdf));
  }
  return result;
}

}  // namespace mimo
