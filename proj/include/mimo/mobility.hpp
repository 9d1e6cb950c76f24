#pragma once

#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "mimo/rng.hpp"

namespace mimo {

using Position3 = Eigen::Vector3d;
using Vector3 = Eigen::Vector3d;

/// UE trajectory at constant speed and constant height.
struct TrackSpec {
  enum class Kind { circular, linear };

  Kind kind = Kind::circular;
  double speed_mps = 30.0;

  // circular
  Position3 center{0.0, 0.0, 1.5};
  double radius_m = 40.0;
  double initial_phase_rad = 0.0;
  int direction = +1;  // +1 counter-clockwise, -1 clockwise

  // linear
  Position3 start{10.0, -40.0, 1.5};
  Vector3 heading{0.0, 1.0, 0.0};

  static TrackSpec circle(Position3 center, double radius, double phase, double speed,
                          int direction = +1);
  static TrackSpec line(Position3 start, Vector3 heading, double speed);

  /// Throws ArgumentError on non-positive speed/radius, non-unit or
  /// non-horizontal heading, or direction ∉ {−1, +1}.
  void validate() const;
};

/// Mean elevation/azimuth plus the spread-perturbed pair actually used by the
/// steering vectors and the wave vector.
struct AngleState {
  double mean_elevation = 0.0;
  double mean_azimuth = 0.0;
  double elevation = 0.0;
  double azimuth = 0.0;
};

struct UEState {
  Position3 position = Position3::Zero();
  Vector3 velocity = Vector3::Zero();
  AngleState angles;
  double doppler_phase = 0.0;
};

/// Position and exact tangent velocity at t = tti · tti_len.
std::pair<Position3, Vector3> advance_track(const TrackSpec& track, std::size_t tti,
                                            double tti_len);

/// Unit vector from the BS to the UE. Throws GeometryError for coincident points.
Vector3 relative_direction(const Position3& bs, const Position3& ue);

/// (elevation, azimuth) of a unit direction. Azimuth is quadrant-aware and
/// defined as 0 at the zenith/nadir.
std::pair<double, double> mean_angles(const Vector3& unit_direction);

/// Unit direction for (elevation, azimuth); inverse of mean_angles.
Vector3 direction_from_angles(double elevation, double azimuth);

/// Adds independent N(0, σ²) draws to each mean angle.
std::pair<double, double> perturb_angles(double mean_elevation, double mean_azimuth,
                                         double sigma_elevation, double sigma_azimuth,
                                         RngStream& rng);

/// (2π/λ)·[cosθ cosφ, cosθ sinφ, sinθ].
Vector3 wave_vector(double elevation, double azimuth, double wavelength);

enum class DopplerMode { accumulate, instantaneous };

/// accumulate: ψ + (kᵀv)·tti_len. instantaneous: kᵀv taken as the phase itself.
double doppler_phase_step(const Vector3& wave, const Vector3& velocity, double tti_len,
                          double previous_phase, DopplerMode mode = DopplerMode::accumulate);

}  // namespace mimo
