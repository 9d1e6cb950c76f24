#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"
#include "oracles.hpp"

using namespace mimo;

TEST_CASE("kron of vectors places b blocks scaled by a") {
  CVector a(2), b(2);
  a << 1.0, 2.0;
  b << 1.0, 0.0;
  CVector expect(4);
  expect << 1.0, 0.0, 2.0, 0.0;
  CHECK((kron(a, b) - expect).norm() == 0.0);
}

TEST_CASE("kron of identities is identity") {
  const CMatrix k = kron(CMatrix(CMatrix::Identity(2, 2)), CMatrix(CMatrix::Identity(3, 3)));
  CHECK((k - CMatrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("kron matches entrywise definition and mixed-product rule") {
  std::mt19937_64 g(7);
  const CMatrix a = oracle::random_matrix(g, 2, 2), b = oracle::random_matrix(g, 2, 2);
  const CMatrix c = oracle::random_matrix(g, 2, 2), d = oracle::random_matrix(g, 2, 2);
  CHECK((kron(a, b) - oracle::kron_brute(a, b)).norm() < 1e-14);
  const CMatrix lhs = oracle::kron_brute(a, b) * oracle::kron_brute(c, d);
  const CMatrix rhs = oracle::kron_brute(a * c, b * d);
  CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
  CHECK((kron(a, b) * kron(c, d) - kron(CMatrix(a * c), CMatrix(b * d))).norm() < 1e-12 * rhs.norm());

  const CMatrix e = oracle::random_matrix(g, 3, 2), f = oracle::random_matrix(g, 2, 4);
  CHECK((kron(e, f) - oracle::kron_brute(e, f)).norm() < 1e-14);
}

TEST_CASE("hermitian_evd on a diagonal matrix") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0;
  const auto evd = hermitian_evd(a);
  CHECK(evd.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(evd.eigenvalues(1) == doctest::Approx(1.0));
  CHECK(std::abs(evd.eigenvectors(1, 0) - cdouble(1.0)) < 1e-14);
  CHECK(std::abs(evd.eigenvectors(0, 1) - cdouble(1.0)) < 1e-14);
}

TEST_CASE("hermitian_evd of rank one vvᴴ") {
  std::mt19937_64 g(3);
  CVector v = oracle::random_vector(g, 5);
  v.normalize();
  const auto evd = hermitian_evd(v * v.adjoint());
  CHECK(evd.eigenvalues(0) == doctest::Approx(1.0));
  for (Eigen::Index i = 1; i < 5; ++i) CHECK(std::abs(evd.eigenvalues(i)) < 1e-14);
  CHECK(std::abs(std::abs(v.dot(evd.eigenvectors.col(0))) - 1.0) < 1e-12);
}

TEST_CASE("hermitian_evd reconstructs random Hermitian input") {
  std::mt19937_64 g(11);
  const CMatrix a = oracle::random_hermitian(g, 4);
  const auto evd = hermitian_evd(a);
  const CMatrix rec = evd.eigenvectors * evd.eigenvalues.cast<cdouble>().asDiagonal() *
                      evd.eigenvectors.adjoint();
  CHECK((rec - a).norm() < 1e-10);
  for (Eigen::Index i = 1; i < 4; ++i) CHECK(evd.eigenvalues(i - 1) >= evd.eigenvalues(i));
  CHECK((evd.eigenvectors.adjoint() * evd.eigenvectors - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("hermitian_evd is reproducible and phase-fixed") {
  std::mt19937_64 g(5);
  const CMatrix a = oracle::random_hermitian(g, 6);
  const auto e1 = hermitian_evd(a);
  const auto e2 = hermitian_evd(a);
  CHECK((e1.eigenvectors - e2.eigenvectors).norm() == 0.0);
  for (Eigen::Index c = 0; c < 6; ++c) {
    Eigen::Index k = 0;
    e1.eigenvectors.col(c).cwiseAbs().maxCoeff(&k);
    CHECK(std::abs(e1.eigenvectors(k, c).imag()) < 1e-14);
    CHECK(e1.eigenvectors(k, c).real() > 0.0);
  }
}

TEST_CASE("hermitian_evd rejects bad input") {
  CHECK_THROWS_AS(hermitian_evd(CMatrix::Zero(2, 3)), DimensionError);
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hermitian_evd(nan), ArgumentError);
}

TEST_CASE("dominant_eigenvectors") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 5.0;
  d(1, 1) = 2.0;
  d(2, 2) = 1.0;
  const CMatrix e1 = dominant_eigenvectors(d, 1);
  REQUIRE(e1.cols() == 1);
  CHECK(std::abs(e1(0, 0) - cdouble(1.0)) < 1e-14);

  SUBCASE("rank one returns the phase-fixed generator") {
    std::mt19937_64 g(2);
    CVector v = oracle::random_vector(g, 4);
    v.normalize();
    const CVector u = dominant_eigenvectors(v * v.adjoint(), 1).col(0);
    CHECK(std::abs(std::abs(v.dot(u)) - 1.0) < 1e-12);
  }

  SUBCASE("two weighted rank-one terms span the generators") {
    std::mt19937_64 g(9);
    const CVector a = oracle::random_vector(g, 6), b = oracle::random_vector(g, 6);
    const CMatrix m = 3.0 * a * a.adjoint() + 1.0 * b * b.adjoint();
    const CMatrix p_dom = projector(dominant_eigenvectors(m, 2));
    CMatrix gen(6, 2);
    gen << a, b;
    const CMatrix p_gen = projector(gen.householderQr().householderQ() * CMatrix::Identity(6, 2));
    CHECK((p_dom - p_gen).norm() < 1e-10);
  }

  CHECK_THROWS_AS(dominant_eigenvectors(d, 0), ArgumentError);
  CHECK_THROWS_AS(dominant_eigenvectors(d, 4), ArgumentError);
}

TEST_CASE("numerical_rank counts eigenvalues above the relative threshold") {
  std::mt19937_64 g(4);
  const CMatrix a = oracle::random_matrix(g, 5, 2);
  CHECK(numerical_rank(hermitian_evd(a * a.adjoint())) == 2);
  CHECK(numerical_rank(hermitian_evd(CMatrix::Identity(3, 3))) == 3);
}

TEST_CASE("bessel_j0 values") {
  CHECK(bessel_j0(0.0) == 1.0);
  for (double x : {0.3, 2.404825557695773, 7.5, 31.0}) CHECK(bessel_j0(x) == bessel_j0(-x));
  CHECK(std::abs(bessel_j0(2.0 * M_PI * 0.6) - oracle::j0_series(2.0 * M_PI * 0.6)) < 1e-3);
  CHECK(bessel_j0(2.0 * M_PI * 0.6) == doctest::Approx(-0.40).epsilon(0.01));
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
}

TEST_CASE("bessel_j0 agrees with the series oracle on [0, 50]") {
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(bessel_j0(x) - oracle::j0_series(x)));
  }
  CHECK(worst < 1e-10);
  MESSAGE("max |J0 - series| on [0,50]: " << worst);
}

TEST_CASE("bessel_j0 rejects non-finite input") {
  CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()), ArgumentError);
  CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()), ArgumentError);
}
