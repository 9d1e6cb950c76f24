#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "mimo/linalg.hpp"
#include "mimo/mobility.hpp"
#include "mimo/rng.hpp"

namespace mimo {

/// Uniform planar array in the x–z plane.
///
/// Elements are stored column by column: the 0-based linear index of element
/// (m_H, m_V) is m_V + m_H·M_V, so each contiguous block of M_V entries is one
/// vertical column and the full steering vector is a_H ⊗ a_V.
struct ArrayGeometry {
  std::size_t m_h = 16;
  std::size_t m_v = 16;
  double d_h = 0.025;  // meters
  double d_v = 0.025;  // meters
  double wavelength = 0.05;

  /// Half-wavelength UPA at the given carrier.
  static ArrayGeometry half_wavelength(std::size_t m_h, std::size_t m_v, double carrier_hz);

  std::size_t total() const { return m_h * m_v; }
  std::size_t index(std::size_t h, std::size_t v) const { return v + h * m_v; }
  void validate() const;
};

inline constexpr double kSpeedOfLight = 299792458.0;

/// Per-element power gain g(θ, φ, m) ≥ 0.
class GainModel {
 public:
  using Fn = std::function<double(double elevation, double azimuth, std::size_t element)>;

  GainModel() = default;
  explicit GainModel(Fn fn) : fn_(std::move(fn)) {}

  static GainModel isotropic() { return {}; }

  bool is_isotropic() const { return !fn_; }
  double operator()(double elevation, double azimuth, std::size_t element) const;

 private:
  Fn fn_;
};

/// Combined, LOS and NLOS channel of one UE at one TTI.
/// Invariant: h = √(K/(K+1))·h_los + √(1/(K+1))·h_nlos.
struct ChannelState {
  CVector h;
  CVector h_los;
  CVector h_nlos;
  double k_factor = 0.0;
};

/// 0-based element indices of the first vertical column (vertical) and the
/// first horizontal row (horizontal). They share element 0.
struct SubArrayIndexSets {
  std::vector<std::size_t> horizontal;
  std::vector<std::size_t> vertical;
};

CVector steering_horizontal(const ArrayGeometry& geom, double elevation, double azimuth);
CVector steering_vertical(const ArrayGeometry& geom, double elevation);
CVector steering_full(const ArrayGeometry& geom, double elevation, double azimuth,
                      const GainModel& gains = GainModel::isotropic());

/// e^{jψ}·a.
CVector los_channel(double doppler_phase, const CVector& steering);

/// Clarke–Jakes lag-one correlation J₀(2π·(speed/λ)·tti_len).
double temporal_correlation(double speed, double wavelength, double tti_len);

/// One Gauss–Markov step ρ·state + √(1−ρ²)·innovation, innovation ~ CN(0, R).
/// Throws ArgumentError for |ρ| > 1 or a dimension mismatch.
CVector nlos_step(const CVector& state, double rho, const CovarianceFactor& cov, RngStream& rng);

/// Throws ArgumentError for K < 0 or mismatched dimensions.
CVector rician_combine(double k_factor, const CVector& h_los, const CVector& h_nlos);

SubArrayIndexSets subarray_index_sets(const ArrayGeometry& geom);

/// Gather of h at idx, order preserved. Throws ArgumentError on out-of-range.
CVector extract_subarray(const CVector& h, const std::vector<std::size_t>& idx);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Static parameters shared by every UE's channel process.
struct ChannelModel {
  ArrayGeometry geometry;
  GainModel gains;
  double k_factor = 100.0;  // linear
  double sigma_elevation = 0.0;  // rad
  double sigma_azimuth = 0.0;    // rad
  double tti_len = 1e-3;
  DopplerMode doppler_mode = DopplerMode::accumulate;
  Position3 bs_position{0.0, 0.0, 25.0};
  CovarianceFactor nlos_covariance = CovarianceFactor::identity(256);
};

/// Time evolution of one UE's channel along its track.
///
/// step() must be called with tti = 0, 1, 2, ... in order: the NLOS term is
/// an AR(1) process and the Doppler phase is accumulated. Angle perturbations
/// and NLOS innovations come from two separate streams.
class ChannelProcess {
 public:
  ChannelProcess(const ChannelModel& model, TrackSpec track, RngStream angle_stream,
                 RngStream nlos_stream);

  const ChannelState& step(std::size_t tti);

  const ChannelState& state() const { return state_; }
  const UEState& ue() const { return ue_; }
  std::size_t next_tti() const { return next_tti_; }

 private:
  const ChannelModel* model_;
  TrackSpec track_;
  RngStream angle_rng_;
  RngStream nlos_rng_;
  ChannelState state_;
  UEState ue_;
  double rho_prev_ = 1.0;
  std::size_t next_tti_ = 0;
};

/// Geometry-only view of a UE at one TTI: position, velocity and mean angles.
UEState ue_geometry(const TrackSpec& track, const Position3& bs, std::size_t tti, double tti_len);

/// A fresh channel draw at fixed mean angles: perturbed LOS plus a stationary
/// NLOS sample. Used where realizations must be independent (subspace study).
ChannelState draw_channel(const ChannelModel& model, const UEState& geometry, double doppler_phase,
                          RngStream& angle_rng, RngStream& nlos_rng);

}  // namespace mimo
