#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mimo/linalg.hpp"
#include "mimo/precoding.hpp"

namespace mimo {

/// SINR of one UE with its components; sinr = desired/(interference + noise).
struct SinrReport {
  double sinr = 0.0;
  double desired = 0.0;
  double interference = 0.0;
  double noise = 0.0;
};

/// |h_uᴴf_u|² / (Σ_{j≠u}|h_uᴴf_j|² + σ_b²), evaluated on true channels.
SinrReport sinr(const std::vector<CVector>& true_channels, const std::vector<CVector>& precoders,
                double noise_variance, std::size_t u);
SinrReport sinr(const std::vector<CVector>& true_channels, const PrecoderSet& precoders,
                double noise_variance, std::size_t u);

/// Σ_u log₂(1 + SINR_u) in bits/s/Hz.
double sum_rate(std::span<const double> sinrs);
/// Sum-rate of all UEs for one set of precoders.
double sum_rate(const std::vector<CVector>& true_channels, const std::vector<CVector>& precoders,
                double noise_variance);

/// 1 − |uᴴv|² for unit vectors. Throws ArgumentError if either is not unit norm.
double chordal_distance_sq(const CVector& u, const CVector& v);

/// Normalized chordal distance between the spans of two orthonormal bases:
/// 1 − ‖AᴴB‖_F² / max(p_A, p_B). Reduces to chordal_distance_sq for p = 1.
double subspace_chordal_distance_sq(const CMatrix& a, const CMatrix& b);

/// (1/N) Σ h hᴴ. Throws ArgumentError for empty or ragged input.
CMatrix sample_covariance(const std::vector<CVector>& realizations);
/// Same, with realizations as the columns of a matrix.
CMatrix sample_covariance(const CMatrix& columns);

/// Sorted wall-clock samples of one procedure.
struct RuntimeEcdf {
  std::string method;
  std::vector<double> samples;  // seconds, ascending

  /// Linear-interpolated quantile, p ∈ [0, 1]; quantile(0) = min, quantile(1) = max.
  double quantile(double p) const;
  double median() const { return quantile(0.5); }
  /// Fraction of samples ≤ t.
  double cdf(double t) const;
};

/// Times `repetitions` invocations of procedure(i) on a monotonic clock after
/// max(1, repetitions/10) discarded warm-up invocations.
RuntimeEcdf measure_runtime(std::string method, const std::function<void(std::size_t)>& procedure,
                            std::size_t repetitions);

/// Sample mean with a normal-approximation 95% confidence half-width.
struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};
MeanCi mean_ci(std::span<const double> values);

}  // namespace mimo
