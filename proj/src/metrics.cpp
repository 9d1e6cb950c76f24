#include "mimo/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mimo/errors.hpp"

namespace mimo {

SinrReport sinr(const std::vector<CVector>& true_channels, const std::vector<CVector>& precoders,
                double noise_variance, std::size_t u) {
  if (true_channels.size() != precoders.size()) {
    throw ArgumentError("sinr: channel and precoder counts differ");
  }
  if (u >= true_channels.size()) throw ArgumentError("sinr: UE index out of range");
  const CVector& h = true_channels[u];
  SinrReport r;
  r.noise = noise_variance;
  for (std::size_t j = 0; j < precoders.size(); ++j) {
    if (precoders[j].size() != h.size()) throw ArgumentError("sinr: dimension mismatch");
    const double p = std::norm(h.dot(precoders[j]));  // |hᴴ f_j|²
    if (j == u) {
      r.desired = p;
    } else {
      r.interference += p;
    }
  }
  const double denom = r.interference + r.noise;
  r.sinr = denom > 0.0 ? r.desired / denom : 0.0;
  return r;
}

SinrReport sinr(const std::vector<CVector>& true_channels, const PrecoderSet& precoders,
                double noise_variance, std::size_t u) {
  std::vector<CVector> f;
  f.reserve(precoders.precoders.size());
  for (const auto& p : precoders.precoders) f.push_back(p.f);
  return sinr(true_channels, f, noise_variance, u);
}

double sum_rate(std::span<const double> sinrs) {
  double r = 0.0;
  for (double s : sinrs) {
    if (s < 0.0) throw ArgumentError("sum_rate: negative SINR");
    r += std::log2(1.0 + s);
  }
  return r;
}

double sum_rate(const std::vector<CVector>& true_channels, const std::vector<CVector>& precoders,
                double noise_variance) {
  std::vector<double> s(true_channels.size());
  for (std::size_t u = 0; u < s.size(); ++u) {
    s[u] = sinr(true_channels, precoders, noise_variance, u).sinr;
  }
  return sum_rate(s);
}

double chordal_distance_sq(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) throw ArgumentError("chordal_distance_sq: lengths differ");
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9) {
    throw ArgumentError("chordal_distance_sq: inputs must be unit norm");
  }
  return std::clamp(1.0 - std::norm(u.dot(v)), 0.0, 1.0);
}

double subspace_chordal_distance_sq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("subspace_chordal_distance_sq: dimensions differ");
  const auto p = static_cast<double>(std::max(a.cols(), b.cols()));
  if (p == 0.0) return 0.0;
  return std::clamp(1.0 - (a.adjoint() * b).squaredNorm() / p, 0.0, 1.0);
}

CMatrix sample_covariance(const std::vector<CVector>& realizations) {
  if (realizations.empty()) throw ArgumentError("sample_covariance: no realizations");
  const Eigen::Index n = realizations.front().size();
  CMatrix cols(n, static_cast<Eigen::Index>(realizations.size()));
  for (std::size_t i = 0; i < realizations.size(); ++i) {
    if (realizations[i].size() != n) throw ArgumentError("sample_covariance: ragged input");
    cols.col(static_cast<Eigen::Index>(i)) = realizations[i];
  }
  return sample_covariance(cols);
}

CMatrix sample_covariance(const CMatrix& columns) {
  if (columns.cols() == 0) throw ArgumentError("sample_covariance: no realizations");
  CMatrix r = CMatrix::Zero(columns.rows(), columns.rows());
  r.selfadjointView<Eigen::Lower>().rankUpdate(columns, 1.0 / static_cast<double>(columns.cols()));
  // Fill the strict upper triangle so the result is exactly Hermitian.
  r.triangularView<Eigen::StrictlyUpper>() = r.adjoint();
  return r;
}

double RuntimeEcdf::quantile(double p) const {
  if (samples.empty()) throw ArgumentError("RuntimeEcdf: no samples");
  p = std::clamp(p, 0.0, 1.0);
  const double pos = p * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

double RuntimeEcdf::cdf(double t) const {
  if (samples.empty()) return 0.0;
  const auto it = std::upper_bound(samples.begin(), samples.end(), t);
  return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

RuntimeEcdf measure_runtime(std::string method, const std::function<void(std::size_t)>& procedure,
                            std::size_t repetitions) {
  if (repetitions < 1) throw ArgumentError("measure_runtime: need at least one repetition");
  using clock = std::chrono::steady_clock;
  const std::size_t warmup = std::max<std::size_t>(1, repetitions / 10);
  for (std::size_t i = 0; i < warmup; ++i) procedure(i);
  RuntimeEcdf out{std::move(method), {}};
  out.samples.reserve(repetitions);
  for (std::size_t i = 0; i < repetitions; ++i) {
    const auto t0 = clock::now();
    procedure(warmup + i);
    const auto t1 = clock::now();
    out.samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(out.samples.begin(), out.samples.end());
  return out;
}

MeanCi mean_ci(std::span<const double> values) {
  MeanCi r;
  if (values.empty()) return r;
  const auto n = static_cast<double>(values.size());
  for (double v : values) r.mean += v;
  r.mean /= n;
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.half_width = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  return r;
}

}  // namespace mimo
