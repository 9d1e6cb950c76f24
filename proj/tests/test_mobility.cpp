#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mimo/errors.hpp"
#include "mimo/mobility.hpp"

using namespace mimo;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

TEST_CASE("linear track positions and velocity") {
  const auto t = TrackSpec::line({10, 0, 1.5}, {1, 0, 0}, 30.0);
  auto [p0, v0] = advance_track(t, 0, 1e-3);
  CHECK((p0 - Position3(10, 0, 1.5)).norm() < 1e-12);
  CHECK((v0 - Vector3(30, 0, 0)).norm() < 1e-12);
  auto [p1, v1] = advance_track(t, 1000, 1e-3);
  CHECK((p1 - Position3(40, 0, 1.5)).norm() < 1e-9);
}

TEST_CASE("circular track closes after one period and keeps speed") {
  const auto t = TrackSpec::circle({0, 0, 1.5}, 20.0, 0.3, 30.0);
  const double period = 2.0 * std::numbers::pi * 20.0 / 30.0;
  const std::size_t steps = 1000;
  auto [p0, v0] = advance_track(t, 0, period / steps);
  auto [p1, v1] = advance_track(t, steps, period / steps);
  CHECK((p1 - p0).norm() < 1e-9);
  for (std::size_t k : {0u, 17u, 500u, 999u}) {
    auto [p, v] = advance_track(t, k, period / steps);
    CHECK(v.norm() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(std::abs(p.z() - 1.5) < 1e-12);
    CHECK(std::abs(v.dot(p - t.center)) < 1e-9);
  }
}

TEST_CASE("track validation") {
  CHECK_THROWS_AS(TrackSpec::line({0, 0, 1.5}, {0, 0, 1}, 30.0).validate(), ArgumentError);
  CHECK_THROWS_AS(TrackSpec::circle({0, 0, 1.5}, 0.0, 0.0, 30.0).validate(), ArgumentError);
  CHECK_THROWS_AS(TrackSpec::circle({0, 0, 1.5}, 5.0, 0.0, 0.0).validate(), ArgumentError);
  CHECK_NOTHROW(TrackSpec::circle({0, 0, 1.5}, 5.0, 0.0, 1.0, -1).validate());
}

TEST_CASE("relative_direction") {
  CHECK((relative_direction({0, 0, 0}, {0, 0, 5}) - Vector3(0, 0, 1)).norm() < 1e-15);
  const Vector3 d = relative_direction({0, 0, 25}, {50, 0, 1.5});
  CHECK(d.x() == doctest::Approx(0.9050).epsilon(1e-4));
  CHECK(d.y() == 0.0);
  CHECK(d.z() == doctest::Approx(-0.4254).epsilon(1e-3));
  CHECK(relative_direction({1, 2, 3}, {-4, 7, 0.5}).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(relative_direction({1, 1, 1}, {1, 1, 1}), GeometryError);
}

TEST_CASE("mean_angles") {
  auto [t0, p0] = mean_angles({1, 0, 0});
  CHECK(t0 == 0.0);
  CHECK(p0 == 0.0);
  auto [tz, pz] = mean_angles({0, 0, 1});
  CHECK(tz == doctest::Approx(std::numbers::pi / 2));
  CHECK(pz == 0.0);
  auto [t, p] = mean_angles(relative_direction({0, 0, 25}, {50, 0, 1.5}));
  CHECK(t == doctest::Approx(-0.4394).epsilon(1e-3));
  CHECK(p == 0.0);
  auto [tq, pq] = mean_angles(Vector3(-1, -1, 0).normalized());
  CHECK(pq == doctest::Approx(-3.0 * std::numbers::pi / 4));
  CHECK((direction_from_angles(0.3, -2.0) - Vector3(std::cos(0.3) * std::cos(-2.0),
                                                    std::cos(0.3) * std::sin(-2.0),
                                                    std::sin(0.3)))
            .norm() < 1e-15);
  CHECK_THROWS_AS(mean_angles({2, 0, 0}), ArgumentError);
}

TEST_CASE("perturb_angles statistics") {
  RngStream rng(1, 1);
  auto [t, p] = perturb_angles(0.2, 0.4, 0.0, 0.0, rng);
  CHECK(t == 0.2);
  CHECK(p == 0.4);

  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = perturb_angles(0.0, 1.0, kDeg, kDeg, rng).first;
    sum += th;
    sq += th * th;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean) < 0.02 * kDeg);
  CHECK(sd == doctest::Approx(kDeg).epsilon(0.03));
}

TEST_CASE("wave_vector") {
  const Vector3 k = wave_vector(0.0, 0.0, 0.05);
  CHECK(k.x() == doctest::Approx(125.66).epsilon(1e-4));
  CHECK(std::abs(k.y()) < 1e-12);
  CHECK(std::abs(k.z()) < 1e-12);
  CHECK(wave_vector(0.7, -2.1, 0.05).norm() == doctest::Approx(2.0 * std::numbers::pi / 0.05));
  const Vector3 kz = wave_vector(std::numbers::pi / 2, 0.0, 0.05);
  CHECK(kz.z() == doctest::Approx(2.0 * std::numbers::pi / 0.05));
}

TEST_CASE("doppler_phase_step") {
  const Vector3 k = wave_vector(0.0, 0.0, 0.05);
  CHECK(doppler_phase_step(k, {0, 30, 0}, 1e-3, 0.7) == doctest::Approx(0.7));
  CHECK(doppler_phase_step(k, {0, 0, 0}, 1e-3, 0.7) == 0.7);
  CHECK(doppler_phase_step(k, {30, 0, 0}, 1e-3, 0.0) ==
        doctest::Approx(2.0 * std::numbers::pi * 0.6));
  CHECK(doppler_phase_step(k, {30, 0, 0}, 1e-3, 1.0) ==
        doctest::Approx(1.0 + 2.0 * std::numbers::pi * 0.6));
  CHECK(doppler_phase_step(k, {30, 0, 0}, 1e-3, 1.0, DopplerMode::instantaneous) ==
        doctest::Approx(k.x() * 30.0));
}

TEST_CASE("circular track around the BS keeps the elevation constant") {
  const Position3 bs(0, 0, 25);
  const auto t = TrackSpec::circle({0, 0, 1.5}, 20.0, 0.0, 30.0);
  double theta0 = 0.0, prev_phi = -10.0;
  for (std::size_t n = 0; n < 1000; n += 37) {
    auto [p, v] = advance_track(t, n, 1e-3);
    auto [th, ph] = mean_angles(relative_direction(bs, p));
    if (n == 0) theta0 = th;
    CHECK(std::abs(th - theta0) < 1e-12);
    CHECK(ph > prev_phi);
    prev_phi = ph;
  }
}

TEST_CASE("linear track changes both angles") {
  const Position3 bs(0, 0, 25);
  const auto t = TrackSpec::line({10, -40, 1.5}, {0, 1, 0}, 30.0);
  auto [p0, v0] = advance_track(t, 0, 1e-3);
  auto [p1, v1] = advance_track(t, 999, 1e-3);
  auto [t0, f0] = mean_angles(relative_direction(bs, p0));
  auto [t1, f1] = mean_angles(relative_direction(bs, p1));
  CHECK(std::abs(t1 - t0) > 0.1);
  CHECK(std::abs(f1 - f0) > 0.1);
}
