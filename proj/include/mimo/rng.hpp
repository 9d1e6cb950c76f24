#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

#include "mimo/linalg.hpp"

namespace mimo {

/// Mixes a list of integers into one 64-bit stream id (splitmix64 chain).
/// Used to name independent streams, e.g. {purpose, realization, ue}.
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

/// A reproducible random stream identified by (seed, stream id).
///
/// Two streams built from the same pair produce identical sequences; streams
/// with different ids are seeded through a full-avalanche mix and can be
/// treated as independent. A stream is owned by one worker at a time.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream sharing this seed, with id mixed from (this id, key).
  RngStream substream(std::uint64_t key) const;

  double normal();
  double uniform();
  /// Circularly-symmetric CN(0, 1): real and imaginary parts each N(0, ½).
  cdouble complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Square-root factor L of a PSD covariance (L Lᴴ = R), reusable across draws.
class CovarianceFactor {
 public:
  /// Identity covariance of dimension n (fast path, no factor stored).
  static CovarianceFactor identity(std::size_t n);
  /// Throws DecompositionError when the covariance is not Hermitian PSD.
  static CovarianceFactor from_covariance(const CMatrix& covariance);

  std::size_t dim() const { return dim_; }
  bool is_identity() const { return !factor_.has_value(); }
  const CMatrix* factor() const { return factor_ ? &*factor_ : nullptr; }

 private:
  std::size_t dim_ = 0;
  std::optional<CMatrix> factor_;
};

/// n i.i.d. CN(0, 1) entries.
CVector complex_gaussian(RngStream& rng, std::size_t n);
/// One ZMCSG draw with covariance L Lᴴ.
CVector complex_gaussian(RngStream& rng, const CovarianceFactor& cov);
/// One ZMCSG draw with the given covariance (factored on every call).
CVector complex_gaussian(RngStream& rng, const CMatrix& covariance);

}  // namespace mimo
