#include "mimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(stream_id ^ 0x5851f42d4c957f2dULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) {
    h = splitmix64(h ^ splitmix64(p));
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t key) const {
  return RngStream(seed_, stream_key({stream_id_, key}));
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

cdouble RngStream::complex_normal() {
  static const double kHalfSqrt = std::sqrt(0.5);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {kHalfSqrt * re, kHalfSqrt * im};
}

CovarianceFactor CovarianceFactor::identity(std::size_t n) {
  CovarianceFactor f;
  f.dim_ = n;
  return f;
}

CovarianceFactor CovarianceFactor::from_covariance(const CMatrix& covariance) {
  if (covariance.rows() != covariance.cols()) {
    throw DecompositionError("covariance must be square");
  }
  const CMatrix sym = 0.5 * (covariance + covariance.adjoint());
  const double asym = (covariance - sym).norm();
  if (asym > 1e-10 * std::max(1.0, covariance.norm())) {
    throw DecompositionError("covariance is not Hermitian");
  }
  EigenDecomposition evd = hermitian_evd(sym);
  const double top = evd.eigenvalues.size() ? std::max(0.0, evd.eigenvalues(0)) : 0.0;
  RVector root(evd.eigenvalues.size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    const double lam = evd.eigenvalues(i);
    if (lam < -1e-10 * std::max(1.0, top)) {
      throw DecompositionError("covariance is not positive semidefinite (eigenvalue " +
                               std::to_string(lam) + ")");
    }
    root(i) = std::sqrt(std::max(0.0, lam));
  }
  CovarianceFactor f;
  f.dim_ = static_cast<std::size_t>(covariance.rows());
  f.factor_ = evd.eigenvectors * root.asDiagonal();
  return f;
}

CVector complex_gaussian(RngStream& rng, std::size_t n) {
  CVector out(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = rng.complex_normal();
  return out;
}

CVector complex_gaussian(RngStream& rng, const CovarianceFactor& cov) {
  CVector white = complex_gaussian(rng, cov.dim());
  if (cov.is_identity()) return white;
  return *cov.factor() * white;
}

CVector complex_gaussian(RngStream& rng, const CMatrix& covariance) {
  return complex_gaussian(rng, CovarianceFactor::from_covariance(covariance));
}

}  // namespace mimo
