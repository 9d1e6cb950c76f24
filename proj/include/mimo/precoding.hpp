#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/linalg.hpp"

namespace mimo {

enum class Method { MRT, ZF, TMRT, TZF };

std::string_view to_string(Method m);
/// Throws ArgumentError for an unknown name.
Method parse_method(std::string_view name);

/// A beamforming vector with ‖f‖² equal to its power budget.
struct Precoder {
  CVector f;
  Method method = Method::MRT;
  double power_budget = 0.0;
};

struct PrecoderSet {
  std::vector<Precoder> precoders;
  double total_budget = 0.0;

  double total_power() const;
};

/// Column-space projectors of the horizontal and vertical interference Grams.
struct ProjectorPair {
  CMatrix k_h;
  CMatrix k_v;
};

/// How many Gram eigenvectors span the interference subspace.
///   fixed:    exactly U−1, the number of interferers.
///   adaptive: eigenvalues above threshold·λ_max only.
enum class RankPolicy { fixed, adaptive };

struct ProjectorOptions {
  RankPolicy rank = RankPolicy::fixed;
  double threshold = 1e-10;
};

/// f = √e · h/‖h‖. Throws DegenerateError for a zero channel.
Precoder mrt(const CVector& h, double power_budget);

/// Rows h_jᴴ for all j ≠ u in ascending j. A single UE yields a 0 × M matrix.
CMatrix interference_matrix(const std::vector<CVector>& channels, std::size_t u);

/// Projector onto the dominant eigenvectors of h̃ᴴh̃ (U−1 of them under the
/// fixed policy). Returns an empty (0-column) basis for a 0-row input.
CMatrix interference_basis(const CMatrix& h_tilde, const ProjectorOptions& opts = {});

/// Zero-forcing: f ∝ (I − ṼṼᴴ) h_u with Ṽ from the EVD of h̃ᴴh̃.
/// Throws InfeasibleError if M_BS < U and DegenerateError if the projection
/// of h_u vanishes.
Precoder zf(const CVector& h_u, const CMatrix& h_tilde, double power_budget,
            const ProjectorOptions& opts = {});

/// Tensor MRT: (e^{1/4} h_H/‖h_H‖) ⊗ (e^{1/4} h_V/‖h_V‖).
Precoder tmrt(const CVector& h_h, const CVector& h_v, double power_budget);

/// K_H and K_V from the sub-array interference Grams.
ProjectorPair tensor_projectors(const CMatrix& h_tilde_h, const CMatrix& h_tilde_v,
                                const ProjectorOptions& opts = {});

/// x − (K_H ⊗ K_V) x, evaluated as vec(X) − vec(K_V X K_Hᵀ) on the M_V × M_H
/// reshape of x. The M_BS × M_BS projector is never formed.
CVector apply_tensor_null_projector(const ProjectorPair& k, const CVector& x);

/// Tensor zero-forcing: f ∝ (I − K_H ⊗ K_V)(h_H ⊗ h_V).
/// Throws InfeasibleError unless min(M_H, M_V) > U−1.
Precoder tzf(const CVector& h_h, const CVector& h_v, const CMatrix& h_tilde_h,
             const CMatrix& h_tilde_v, double power_budget, const ProjectorOptions& opts = {});

/// Tensor zero-forcing from precomputed projectors (lets a caller hold the
/// vertical factor fixed across designs).
Precoder tzf(const CVector& h_h, const CVector& h_v, const ProjectorPair& k, double power_budget);

/// min(M_H, M_V) > U − 1.
bool tzf_feasible(std::size_t m_h, std::size_t m_v, std::size_t u_count);

/// Equal split of the total budget.
std::vector<double> allocate_power(double total_budget, std::size_t u_count);

/// Orthogonal projector onto the numerical column space of a Hermitian PSD
/// matrix (eigenvalues above rel_threshold · λ_max).
CMatrix column_space_projector(const CMatrix& gram, double rel_threshold = 1e-10);

}  // namespace mimo
