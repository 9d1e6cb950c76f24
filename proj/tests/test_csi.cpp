#include <cmath>
#include <random>

#include "doctest.h"
#include "mimo/channel.hpp"
#include "mimo/csi.hpp"
#include "mimo/errors.hpp"
#include "oracles.hpp"

using namespace mimo;

TEST_CASE("generate_pilots") {
  const auto p1 = generate_pilots(1, 1);
  CHECK(p1.rows.rows() == 1);
  CHECK(std::abs(p1.rows(0, 0) - cdouble(1.0)) < 1e-15);

  const auto p2 = generate_pilots(2, 2);
  CHECK(std::abs(p2.rows(0, 0) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(p2.rows(0, 1) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(p2.rows(1, 0) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(p2.rows(1, 1) - cdouble(-1.0)) < 1e-15);
  CHECK(std::abs(p2.rows.row(0).dot(p2.rows.row(1))) < 1e-15);

  const auto p3 = generate_pilots(3, 4);
  const CMatrix gram = p3.rows * p3.rows.adjoint();
  CHECK((gram - 4.0 * CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((p3.pilot(1) - p3.rows.row(1).adjoint()).norm() == 0.0);

  CHECK_THROWS_AS(generate_pilots(3, 2), ConfigError);
  CHECK_THROWS_AS(generate_pilots(0, 2), ConfigError);
}

TEST_CASE("uplink_receive noiseless rank one") {
  std::mt19937_64 g(1);
  const CVector h = oracle::random_vector(g, 5);
  PilotMatrix p;
  p.rows = CMatrix::Ones(1, 2);
  RngStream rng(1, 1);
  const CMatrix x = uplink_receive({h}, p, 4.0, 0.0, rng);
  CHECK((x.col(0) - 2.0 * h).norm() < 1e-14);
  CHECK((x.col(1) - 2.0 * h).norm() < 1e-14);
}

TEST_CASE("uplink_receive with zero pilot power is pure noise") {
  std::mt19937_64 g(2);
  const auto p = generate_pilots(2, 4);
  RngStream rng(2, 2);
  const CMatrix x =
      uplink_receive({oracle::random_vector(g, 64), oracle::random_vector(g, 64)}, p, 0.0, 2.0, rng);
  const double var = x.squaredNorm() / static_cast<double>(x.size());
  CHECK(var == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("ls_estimate recovers channels without noise") {
  std::mt19937_64 g(3);
  const auto p = generate_pilots(3, 3);
  std::vector<CVector> hs{oracle::random_vector(g, 8), oracle::random_vector(g, 8),
                          oracle::random_vector(g, 8)};
  RngStream rng(3, 3);
  const CMatrix x = uplink_receive(hs, p, 2.5, 0.0, rng);
  for (std::size_t u = 0; u < 3; ++u) {
    CHECK((ls_estimate(x, p.pilot(u), 2.5) - hs[u]).norm() < 1e-12);
  }
  CHECK_THROWS_AS(ls_estimate(x, p.pilot(0), 0.0), ArgumentError);
  CHECK_THROWS_AS(ls_estimate(x, CVector::Ones(2), 1.0), ArgumentError);
}

namespace {
double ls_error_variance(std::size_t length, std::uint64_t seed) {
  const auto p = generate_pilots(1, length);
  RngStream rng(seed, 0);
  const CVector h = CVector::Ones(4);
  double acc = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const CMatrix x = uplink_receive({h}, p, 1.0, 1.0, rng);
    acc += (ls_estimate(x, p.pilot(0), 1.0) - h).squaredNorm();
  }
  return acc / (trials * 4.0);
}
}  // namespace

TEST_CASE("ls_estimate error variance is σ²/(L·E_P)") {
  const double v4 = ls_error_variance(4, 10);
  CHECK(std::abs(v4 - 0.25) < 0.05 * 0.25);
  const double v8 = ls_error_variance(8, 11);
  CHECK(std::abs(v8 - 0.125) < 0.05 * 0.125);
  CHECK(v4 / v8 == doctest::Approx(2.0).epsilon(0.08));
}

TEST_CASE("ls_estimate_subarrays matches the gathered full estimate") {
  const auto geom = ArrayGeometry::half_wavelength(6, 5, 6e9);
  const auto idx = subarray_index_sets(geom);
  std::mt19937_64 g(4);
  const auto p = generate_pilots(3, 3);
  std::vector<CVector> hs;
  for (int u = 0; u < 3; ++u) hs.push_back(oracle::random_vector(g, 30));
  RngStream rng(4, 4);
  const CMatrix x = uplink_receive(hs, p, 3.0, 0.7, rng);

  RowAccessLog full_log, sub_log;
  const CVector full = ls_estimate(x, p.pilot(1), 3.0, &full_log);
  const auto [hh, hv] = ls_estimate_subarrays(x, idx, p.pilot(1), 3.0, &sub_log);
  CHECK((hh - extract_subarray(full, idx.horizontal)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((hv - extract_subarray(full, idx.vertical)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(full_log.distinct_rows() == 30);
  CHECK(sub_log.distinct_rows() == 6 + 5 - 1);

  const CMatrix clean = uplink_receive(hs, p, 3.0, 0.0, rng);
  const auto [ch, cv] = ls_estimate_subarrays(clean, idx, p.pilot(2), 3.0);
  CHECK((ch - extract_subarray(hs[2], idx.horizontal)).norm() < 1e-12);
  CHECK((cv - extract_subarray(hs[2], idx.vertical)).norm() < 1e-12);
  CHECK_THROWS_AS(ls_estimate_subarrays(clean, idx, p.pilot(2), -1.0), ArgumentError);
}

TEST_CASE("single-element array: both sub-array estimates are the scalar estimate") {
  const auto geom = ArrayGeometry::half_wavelength(1, 1, 6e9);
  const auto p = generate_pilots(1, 2);
  RngStream rng(5, 5);
  CVector h(1);
  h << cdouble(0.3, -1.2);
  const CMatrix x = uplink_receive({h}, p, 1.0, 0.1, rng);
  const CVector full = ls_estimate(x, p.pilot(0), 1.0);
  const auto [hh, hv] = ls_estimate_subarrays(x, subarray_index_sets(geom), p.pilot(0), 1.0);
  CHECK(hh(0) == full(0));
  CHECK(hv(0) == full(0));
}
