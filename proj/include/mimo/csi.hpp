#pragma once

#include <cstddef>
#include <vector>

#include "mimo/channel.hpp"
#include "mimo/linalg.hpp"
#include "mimo/rng.hpp"

namespace mimo {

/// U × L pilot matrix; row u holds p_uᴴ. Rows are mutually orthogonal with
/// p_iᴴ p_j = L·δ(i−j).
struct PilotMatrix {
  CMatrix rows;

  std::size_t ue_count() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t length() const { return static_cast<std::size_t>(rows.cols()); }
  /// Column vector p_u (the conjugate of row u).
  CVector pilot(std::size_t u) const;
};

/// Records which antenna rows of an observation matrix were read.
class RowAccessLog {
 public:
  void touch(std::size_t row);
  std::size_t distinct_rows() const;
  void clear() { seen_.clear(); }

 private:
  std::vector<bool> seen_;
};

struct CsiEstimate {
  enum class Mode { full, subarray };

  Mode mode = Mode::full;
  CVector h_hat;    // full mode
  CVector h_hat_h;  // subarray mode
  CVector h_hat_v;  // subarray mode
  std::size_t acquired_tti = 0;
};

/// First u_count rows of the L-point DFT matrix. Throws ConfigError if L < U.
PilotMatrix generate_pilots(std::size_t u_count, std::size_t length);

/// X = √E_P Σ_u h_u p_uᴴ + B with B entries CN(0, σ_b²).
CMatrix uplink_receive(const std::vector<CVector>& channels, const PilotMatrix& pilots,
                       double pilot_power, double noise_variance, RngStream& rng);

/// ĥ_u = X p_u / (L √E_P). Throws ArgumentError when E_P ≤ 0 or shapes disagree.
CVector ls_estimate(const CMatrix& received, const CVector& pilot, double pilot_power,
                    RowAccessLog* log = nullptr);

/// LS estimate restricted to the horizontal and vertical sub-array rows of X;
/// reads M_H + M_V − 1 distinct rows.
std::pair<CVector, CVector> ls_estimate_subarrays(const CMatrix& received,
                                                  const SubArrayIndexSets& idx,
                                                  const CVector& pilot, double pilot_power,
                                                  RowAccessLog* log = nullptr);

}  // namespace mimo
