#include "mimo/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mimo/errors.hpp"

namespace mimo {

TrackSpec TrackSpec::circle(Position3 center, double radius, double phase, double speed,
                            int direction) {
  TrackSpec t;
  t.kind = Kind::circular;
  t.center = center;
  t.radius_m = radius;
  t.initial_phase_rad = phase;
  t.speed_mps = speed;
  t.direction = direction;
  return t;
}

TrackSpec TrackSpec::line(Position3 start, Vector3 heading, double speed) {
  TrackSpec t;
  t.kind = Kind::linear;
  t.start = start;
  t.heading = heading;
  t.speed_mps = speed;
  return t;
}

void TrackSpec::validate() const {
  if (!(speed_mps > 0.0) || !std::isfinite(speed_mps)) {
    throw ArgumentError("track speed must be positive");
  }
  if (kind == Kind::circular) {
    if (!(radius_m > 0.0) || !std::isfinite(radius_m)) {
      throw ArgumentError("circular track radius must be positive");
    }
    if (direction != 1 && direction != -1) {
      throw ArgumentError("circular track direction must be +1 or -1");
    }
    if (!center.allFinite()) throw ArgumentError("circular track center must be finite");
  } else {
    if (std::abs(heading.norm() - 1.0) > 1e-9) {
      throw ArgumentError("linear track heading must be a unit vector");
    }
    if (std::abs(heading.z()) > 1e-12) {
      throw ArgumentError("linear track heading must be horizontal (constant UE height)");
    }
    if (!start.allFinite()) throw ArgumentError("linear track start must be finite");
  }
}

std::pair<Position3, Vector3> advance_track(const TrackSpec& track, std::size_t tti,
                                            double tti_len) {
  const double t = static_cast<double>(tti) * tti_len;
  if (track.kind == TrackSpec::Kind::linear) {
    return {track.start + track.speed_mps * t * track.heading, track.speed_mps * track.heading};
  }
  const double omega = track.direction * track.speed_mps / track.radius_m;
  const double phase = track.initial_phase_rad + omega * t;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  Position3 pos = track.center + Position3(track.radius_m * c, track.radius_m * s, 0.0);
  Vector3 vel(-track.radius_m * omega * s, track.radius_m * omega * c, 0.0);
  return {pos, vel};
}

Vector3 relative_direction(const Position3& bs, const Position3& ue) {
  const Vector3 d = ue - bs;
  const double n = d.norm();
  if (!(n > 0.0)) throw GeometryError("relative_direction: BS and UE positions coincide");
  return d / n;
}

std::pair<double, double> mean_angles(const Vector3& u) {
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw ArgumentError("mean_angles: direction must be unit norm");
  }
  const double elevation = std::asin(std::clamp(u.z(), -1.0, 1.0));
  const double horizontal = std::hypot(u.x(), u.y());
  const double azimuth = horizontal > 1e-15 ? std::atan2(u.y(), u.x()) : 0.0;
  return {elevation, azimuth};
}

Vector3 direction_from_angles(double elevation, double azimuth) {
  return {std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
          std::sin(elevation)};
}

std::pair<double, double> perturb_angles(double mean_elevation, double mean_azimuth,
                                         double sigma_elevation, double sigma_azimuth,
                                         RngStream& rng) {
  // Draw both unconditionally so the stream position does not depend on σ.
  const double xe = rng.normal();
  const double xa = rng.normal();
  return {mean_elevation + sigma_elevation * xe, mean_azimuth + sigma_azimuth * xa};
}

Vector3 wave_vector(double elevation, double azimuth, double wavelength) {
  return (2.0 * std::numbers::pi / wavelength) * direction_from_angles(elevation, azimuth);
}

double doppler_phase_step(const Vector3& wave, const Vector3& velocity, double tti_len,
                          double previous_phase, DopplerMode mode) {
  const double rate = wave.dot(velocity);
  if (mode == DopplerMode::instantaneous) return rate;
  return previous_phase + rate * tti_len;
}

}  // namespace mimo
