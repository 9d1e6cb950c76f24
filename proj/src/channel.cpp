#include "mimo/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "mimo/errors.hpp"

namespace mimo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ArrayGeometry ArrayGeometry::half_wavelength(std::size_t m_h, std::size_t m_v, double carrier_hz) {
  ArrayGeometry g;
  g.m_h = m_h;
  g.m_v = m_v;
  g.wavelength = kSpeedOfLight / carrier_hz;
  g.d_h = 0.5 * g.wavelength;
  g.d_v = 0.5 * g.wavelength;
  return g;
}

void ArrayGeometry::validate() const {
  if (m_h < 1 || m_v < 1) throw ArgumentError("array dimensions must be at least 1x1");
  if (!(wavelength > 0.0)) throw ArgumentError("wavelength must be positive");
  if (!(d_h > 0.0) || !(d_v > 0.0)) throw ArgumentError("element spacing must be positive");
}

double GainModel::operator()(double elevation, double azimuth, std::size_t element) const {
  if (!fn_) return 1.0;
  const double g = fn_(elevation, azimuth, element);
  if (!std::isfinite(g) || g < 0.0) {
    throw ArgumentError("gain model returned an invalid gain for element " +
                        std::to_string(element));
  }
  return g;
}

CVector steering_horizontal(const ArrayGeometry& geom, double elevation, double azimuth) {
  const double step = kTwoPi / geom.wavelength * geom.d_h * std::cos(elevation) * std::cos(azimuth);
  CVector a(static_cast<Eigen::Index>(geom.m_h));
  a(0) = 1.0;
  for (Eigen::Index i = 1; i < a.size(); ++i) a(i) = std::polar(1.0, -step * static_cast<double>(i));
  return a;
}

CVector steering_vertical(const ArrayGeometry& geom, double elevation) {
  const double step = kTwoPi / geom.wavelength * geom.d_v * std::sin(elevation);
  CVector a(static_cast<Eigen::Index>(geom.m_v));
  a(0) = 1.0;
  for (Eigen::Index i = 1; i < a.size(); ++i) a(i) = std::polar(1.0, -step * static_cast<double>(i));
  return a;
}

CVector steering_full(const ArrayGeometry& geom, double elevation, double azimuth,
                      const GainModel& gains) {
  CVector a = kron(steering_horizontal(geom, elevation, azimuth), steering_vertical(geom, elevation));
  if (!gains.is_isotropic()) {
    for (Eigen::Index m = 0; m < a.size(); ++m) {
      a(m) *= std::sqrt(gains(elevation, azimuth, static_cast<std::size_t>(m)));
    }
  }
  return a;
}

CVector los_channel(double doppler_phase, const CVector& steering) {
  return std::polar(1.0, doppler_phase) * steering;
}

double temporal_correlation(double speed, double wavelength, double tti_len) {
  if (!(wavelength > 0.0) || !(tti_len > 0.0) || speed < 0.0) {
    throw ArgumentError("temporal_correlation: need λ > 0, tti_len > 0, speed ≥ 0");
  }
  return bessel_j0(kTwoPi * (speed / wavelength) * tti_len);
}

CVector nlos_step(const CVector& state, double rho, const CovarianceFactor& cov, RngStream& rng) {
  if (!(std::abs(rho) <= 1.0)) throw ArgumentError("nlos_step: |rho| must not exceed 1");
  if (static_cast<std::size_t>(state.size()) != cov.dim()) {
    throw ArgumentError("nlos_step: state dimension does not match covariance");
  }
  const CVector innovation = complex_gaussian(rng, cov);
  return rho * state + std::sqrt(1.0 - rho * rho) * innovation;
}

CVector rician_combine(double k_factor, const CVector& h_los, const CVector& h_nlos) {
  if (!(k_factor >= 0.0)) throw ArgumentError("rician_combine: K-factor must be non-negative");
  if (h_los.size() != h_nlos.size()) {
    throw ArgumentError("rician_combine: LOS and NLOS dimensions differ");
  }
  const double los_w = std::sqrt(k_factor / (k_factor + 1.0));
  const double nlos_w = std::sqrt(1.0 / (k_factor + 1.0));
  return los_w * h_los + nlos_w * h_nlos;
}

SubArrayIndexSets subarray_index_sets(const ArrayGeometry& geom) {
  SubArrayIndexSets s;
  s.horizontal.reserve(geom.m_h);
  for (std::size_t h = 0; h < geom.m_h; ++h) s.horizontal.push_back(geom.index(h, 0));
  s.vertical.reserve(geom.m_v);
  for (std::size_t v = 0; v < geom.m_v; ++v) s.vertical.push_back(geom.index(0, v));
  return s;
}

CVector extract_subarray(const CVector& h, const std::vector<std::size_t>& idx) {
  CVector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= static_cast<std::size_t>(h.size())) {
      throw ArgumentError("extract_subarray: index " + std::to_string(idx[i]) +
                          " out of range for length " + std::to_string(h.size()));
    }
    out(static_cast<Eigen::Index>(i)) = h(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

UEState ue_geometry(const TrackSpec& track, const Position3& bs, std::size_t tti, double tti_len) {
  UEState ue;
  std::tie(ue.position, ue.velocity) = advance_track(track, tti, tti_len);
  const auto [el, az] = mean_angles(relative_direction(bs, ue.position));
  ue.angles.mean_elevation = el;
  ue.angles.mean_azimuth = az;
  ue.angles.elevation = el;
  ue.angles.azimuth = az;
  return ue;
}

ChannelProcess::ChannelProcess(const ChannelModel& model, TrackSpec track, RngStream angle_stream,
                               RngStream nlos_stream)
    : model_(&model),
      track_(std::move(track)),
      angle_rng_(std::move(angle_stream)),
      nlos_rng_(std::move(nlos_stream)) {
  model.geometry.validate();
  track_.validate();
  if (model.nlos_covariance.dim() != model.geometry.total()) {
    throw ArgumentError("NLOS covariance dimension does not match the array size");
  }
  state_.k_factor = model.k_factor;
}

const ChannelState& ChannelProcess::step(std::size_t tti) {
  if (tti != next_tti_) {
    throw ArgumentError("ChannelProcess::step: expected tti " + std::to_string(next_tti_) +
                        ", got " + std::to_string(tti));
  }
  const ChannelModel& m = *model_;
  const double previous_phase = ue_.doppler_phase;
  ue_ = ue_geometry(track_, m.bs_position, tti, m.tti_len);
  std::tie(ue_.angles.elevation, ue_.angles.azimuth) =
      perturb_angles(ue_.angles.mean_elevation, ue_.angles.mean_azimuth, m.sigma_elevation,
                     m.sigma_azimuth, angle_rng_);

  // Perturbed angles drive both the steering vector and the wave vector.
  const Vector3 k = wave_vector(ue_.angles.elevation, ue_.angles.azimuth, m.geometry.wavelength);
  if (m.doppler_mode == DopplerMode::instantaneous) {
    ue_.doppler_phase = doppler_phase_step(k, ue_.velocity, m.tti_len, 0.0, m.doppler_mode);
  } else {
    ue_.doppler_phase =
        tti == 0 ? 0.0 : doppler_phase_step(k, ue_.velocity, m.tti_len, previous_phase, m.doppler_mode);
  }

  const CVector a = steering_full(m.geometry, ue_.angles.elevation, ue_.angles.azimuth, m.gains);
  state_.h_los = los_channel(ue_.doppler_phase, a);
  if (tti == 0) {
    state_.h_nlos = complex_gaussian(nlos_rng_, m.nlos_covariance);
  } else {
    state_.h_nlos = nlos_step(state_.h_nlos, rho_prev_, m.nlos_covariance, nlos_rng_);
  }
  state_.k_factor = m.k_factor;
  state_.h = rician_combine(m.k_factor, state_.h_los, state_.h_nlos);
  rho_prev_ = temporal_correlation(ue_.velocity.norm(), m.geometry.wavelength, m.tti_len);
  ++next_tti_;
  return state_;
}

ChannelState draw_channel(const ChannelModel& model, const UEState& geometry, double doppler_phase,
                          RngStream& angle_rng, RngStream& nlos_rng) {
  const auto [el, az] =
      perturb_angles(geometry.angles.mean_elevation, geometry.angles.mean_azimuth,
                     model.sigma_elevation, model.sigma_azimuth, angle_rng);
  ChannelState s;
  s.k_factor = model.k_factor;
  s.h_los = los_channel(doppler_phase, steering_full(model.geometry, el, az, model.gains));
  s.h_nlos = complex_gaussian(nlos_rng, model.nlos_covariance);
  s.h = rician_combine(model.k_factor, s.h_los, s.h_nlos);
  return s;
}

}  // namespace mimo
