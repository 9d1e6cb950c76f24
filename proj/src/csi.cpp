#include "mimo/csi.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

CVector PilotMatrix::pilot(std::size_t u) const {
  return rows.row(static_cast<Eigen::Index>(u)).adjoint();
}

void RowAccessLog::touch(std::size_t row) {
  if (row >= seen_.size()) seen_.resize(row + 1, false);
  seen_[row] = true;
}

std::size_t RowAccessLog::distinct_rows() const {
  std::size_t n = 0;
  for (bool b : seen_) n += b ? 1 : 0;
  return n;
}

PilotMatrix generate_pilots(std::size_t u_count, std::size_t length) {
  if (u_count < 1) throw ConfigError("generate_pilots: need at least one UE");
  if (length < u_count) {
    throw ConfigError("generate_pilots: pilot length " + std::to_string(length) +
                      " is shorter than the UE count " + std::to_string(u_count));
  }
  PilotMatrix p;
  p.rows.resize(static_cast<Eigen::Index>(u_count), static_cast<Eigen::Index>(length));
  const double base = -2.0 * std::numbers::pi / static_cast<double>(length);
  for (std::size_t u = 0; u < u_count; ++u) {
    for (std::size_t l = 0; l < length; ++l) {
      // Reduce u·l mod L first so the phase stays exact for long sequences.
      const auto k = static_cast<double>((u * l) % length);
      p.rows(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(l)) = std::polar(1.0, base * k);
    }
  }
  return p;
}

CMatrix uplink_receive(const std::vector<CVector>& channels, const PilotMatrix& pilots,
                       double pilot_power, double noise_variance, RngStream& rng) {
  if (channels.size() != pilots.ue_count()) {
    throw ArgumentError("uplink_receive: channel count does not match pilot count");
  }
  if (channels.empty()) throw ArgumentError("uplink_receive: no channels");
  if (pilot_power < 0.0 || noise_variance < 0.0) {
    throw ArgumentError("uplink_receive: powers must be non-negative");
  }
  const Eigen::Index m = channels.front().size();
  CMatrix h(m, static_cast<Eigen::Index>(channels.size()));
  for (std::size_t u = 0; u < channels.size(); ++u) {
    if (channels[u].size() != m) throw ArgumentError("uplink_receive: channel sizes differ");
    h.col(static_cast<Eigen::Index>(u)) = channels[u];
  }
  CMatrix x = std::sqrt(pilot_power) * h * pilots.rows;
  const double sigma = std::sqrt(noise_variance);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) += sigma * rng.complex_normal();
  }
  return x;
}

namespace {

void check_ls_inputs(const CMatrix& received, const CVector& pilot, double pilot_power) {
  if (!(pilot_power > 0.0)) throw ArgumentError("ls_estimate: pilot power must be positive");
  if (received.cols() != pilot.size()) {
    throw ArgumentError("ls_estimate: pilot length does not match observation width");
  }
}

CVector estimate_rows(const CMatrix& received, const std::vector<std::size_t>& rows,
                      const CVector& pilot, double scale, RowAccessLog* log) {
  CVector out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= static_cast<std::size_t>(received.rows())) {
      throw ArgumentError("ls_estimate: row index out of range");
    }
    if (log) log->touch(rows[i]);
    out(static_cast<Eigen::Index>(i)) =
        scale * received.row(static_cast<Eigen::Index>(rows[i])).transpose().cwiseProduct(pilot).sum();
  }
  return out;
}

}  // namespace

CVector ls_estimate(const CMatrix& received, const CVector& pilot, double pilot_power,
                    RowAccessLog* log) {
  check_ls_inputs(received, pilot, pilot_power);
  const double scale = 1.0 / (static_cast<double>(pilot.size()) * std::sqrt(pilot_power));
  std::vector<std::size_t> all(static_cast<std::size_t>(received.rows()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  // Same per-row kernel as the sub-array path so both agree bit for bit.
  return estimate_rows(received, all, pilot, scale, log);
}

std::pair<CVector, CVector> ls_estimate_subarrays(const CMatrix& received,
                                                  const SubArrayIndexSets& idx,
                                                  const CVector& pilot, double pilot_power,
                                                  RowAccessLog* log) {
  check_ls_inputs(received, pilot, pilot_power);
  const double scale = 1.0 / (static_cast<double>(pilot.size()) * std::sqrt(pilot_power));
  return {estimate_rows(received, idx.horizontal, pilot, scale, log),
          estimate_rows(received, idx.vertical, pilot, scale, log)};
}

}  // namespace mimo
