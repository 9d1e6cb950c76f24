#include "mimo/precoding.hpp"

#include <algorithm>
#include <cmath>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

constexpr double kDegenerateRatio = 1e-12;

Precoder normalized(CVector f, double reference_norm, Method method, double budget,
                    const char* what) {
  const double n = f.norm();
  if (!(n > kDegenerateRatio * reference_norm) || !std::isfinite(n)) {
    throw DegenerateError(std::string(what) + ": projected channel vanished");
  }
  f *= std::sqrt(budget) / n;
  return {std::move(f), method, budget};
}

void check_budget(double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw ArgumentError("power budget must be finite and non-negative");
  }
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::MRT: return "MRT";
    case Method::ZF: return "ZF";
    case Method::TMRT: return "TMRT";
    case Method::TZF: return "TZF";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "MRT") return Method::MRT;
  if (name == "ZF") return Method::ZF;
  if (name == "TMRT") return Method::TMRT;
  if (name == "TZF") return Method::TZF;
  throw ArgumentError("unknown precoder '" + std::string(name) + "'");
}

double PrecoderSet::total_power() const {
  double p = 0.0;
  for (const auto& pc : precoders) p += pc.f.squaredNorm();
  return p;
}

Precoder mrt(const CVector& h, double power_budget) {
  check_budget(power_budget);
  const double n = h.norm();
  if (!(n > 0.0)) throw DegenerateError("mrt: zero channel");
  return {std::sqrt(power_budget) / n * h, Method::MRT, power_budget};
}

CMatrix interference_matrix(const std::vector<CVector>& channels, std::size_t u) {
  if (u >= channels.size()) throw ArgumentError("interference_matrix: UE index out of range");
  const Eigen::Index m = channels[u].size();
  CMatrix out(static_cast<Eigen::Index>(channels.size() - 1), m);
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < channels.size(); ++j) {
    if (j == u) continue;
    if (channels[j].size() != m) throw ArgumentError("interference_matrix: channel sizes differ");
    out.row(row++) = channels[j].adjoint();
  }
  return out;
}

CMatrix interference_basis(const CMatrix& h_tilde, const ProjectorOptions& opts) {
  const Eigen::Index m = h_tilde.cols();
  if (h_tilde.rows() == 0) return CMatrix(m, 0);
  const CMatrix gram = h_tilde.adjoint() * h_tilde;
  EigenDecomposition evd = hermitian_evd(gram);
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(h_tilde.rows()),
                                        static_cast<std::size_t>(m));
  if (opts.rank == RankPolicy::adaptive) k = std::min(k, numerical_rank(evd, opts.threshold));
  return evd.eigenvectors.leftCols(static_cast<Eigen::Index>(k));
}

Precoder zf(const CVector& h_u, const CMatrix& h_tilde, double power_budget,
            const ProjectorOptions& opts) {
  check_budget(power_budget);
  if (h_tilde.rows() > 0 && h_tilde.cols() != h_u.size()) {
    throw ArgumentError("zf: interference matrix width does not match the channel");
  }
  const auto users = static_cast<std::size_t>(h_tilde.rows()) + 1;
  if (static_cast<std::size_t>(h_u.size()) < users) {
    throw InfeasibleError("zf: " + std::to_string(h_u.size()) + " antennas cannot null " +
                          std::to_string(users - 1) + " interferers");
  }
  const double hn = h_u.norm();
  if (!(hn > 0.0)) throw DegenerateError("zf: zero channel");
  const CMatrix v = interference_basis(h_tilde, opts);
  CVector f = h_u - v * (v.adjoint() * h_u);
  return normalized(std::move(f), hn, Method::ZF, power_budget, "zf");
}

Precoder tmrt(const CVector& h_h, const CVector& h_v, double power_budget) {
  check_budget(power_budget);
  const double nh = h_h.norm();
  const double nv = h_v.norm();
  if (!(nh > 0.0) || !(nv > 0.0)) throw DegenerateError("tmrt: zero sub-array channel");
  const double quarter = std::pow(power_budget, 0.25);
  return {kron(CVector(quarter / nh * h_h), CVector(quarter / nv * h_v)), Method::TMRT,
          power_budget};
}

ProjectorPair tensor_projectors(const CMatrix& h_tilde_h, const CMatrix& h_tilde_v,
                                const ProjectorOptions& opts) {
  return {projector(interference_basis(h_tilde_h, opts)),
          projector(interference_basis(h_tilde_v, opts))};
}

CVector apply_tensor_null_projector(const ProjectorPair& k, const CVector& x) {
  const Eigen::Index mh = k.k_h.rows();
  const Eigen::Index mv = k.k_v.rows();
  if (x.size() != mh * mv) {
    throw ArgumentError("apply_tensor_null_projector: vector length is not M_H·M_V");
  }
  const Eigen::Map<const CMatrix> xm(x.data(), mv, mh);
  CVector out = x;
  Eigen::Map<CMatrix> om(out.data(), mv, mh);
  om.noalias() -= k.k_v * xm * k.k_h.transpose();
  return out;
}

Precoder tzf(const CVector& h_h, const CVector& h_v, const ProjectorPair& k, double power_budget) {
  check_budget(power_budget);
  if (k.k_h.rows() != h_h.size() || k.k_v.rows() != h_v.size()) {
    throw ArgumentError("tzf: projector dimensions do not match the sub-array channels");
  }
  const CVector x = kron(h_h, h_v);
  const double xn = x.norm();
  if (!(xn > 0.0)) throw DegenerateError("tzf: zero sub-array channel");
  return normalized(apply_tensor_null_projector(k, x), xn, Method::TZF, power_budget, "tzf");
}

Precoder tzf(const CVector& h_h, const CVector& h_v, const CMatrix& h_tilde_h,
             const CMatrix& h_tilde_v, double power_budget, const ProjectorOptions& opts) {
  if (h_tilde_h.rows() != h_tilde_v.rows()) {
    throw ArgumentError("tzf: horizontal and vertical interference counts differ");
  }
  const auto users = static_cast<std::size_t>(h_tilde_h.rows()) + 1;
  if (!tzf_feasible(static_cast<std::size_t>(h_h.size()), static_cast<std::size_t>(h_v.size()),
                    users)) {
    throw InfeasibleError("tzf: min(M_H, M_V) = " +
                          std::to_string(std::min(h_h.size(), h_v.size())) +
                          " must exceed U-1 = " + std::to_string(users - 1));
  }
  if ((h_tilde_h.rows() > 0 && h_tilde_h.cols() != h_h.size()) ||
      (h_tilde_v.rows() > 0 && h_tilde_v.cols() != h_v.size())) {
    throw ArgumentError("tzf: interference matrix widths do not match the sub-array channels");
  }
  if (h_tilde_h.rows() == 0) {
    Precoder p = tmrt(h_h, h_v, power_budget);
    p.method = Method::TZF;
    return p;
  }
  return tzf(h_h, h_v, tensor_projectors(h_tilde_h, h_tilde_v, opts), power_budget);
}

bool tzf_feasible(std::size_t m_h, std::size_t m_v, std::size_t u_count) {
  return std::min(m_h, m_v) + 1 > u_count;
}

std::vector<double> allocate_power(double total_budget, std::size_t u_count) {
  if (!(total_budget >= 0.0)) throw ArgumentError("allocate_power: negative budget");
  if (u_count == 0) return {};
  return std::vector<double>(u_count, total_budget / static_cast<double>(u_count));
}

CMatrix column_space_projector(const CMatrix& gram, double rel_threshold) {
  EigenDecomposition evd = hermitian_evd(gram);
  const std::size_t r = numerical_rank(evd, rel_threshold);
  return projector(evd.eigenvectors.leftCols(static_cast<Eigen::Index>(r)));
}

}  // namespace mimo
