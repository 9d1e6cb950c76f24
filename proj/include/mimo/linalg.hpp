#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace mimo {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigenpairs of a Hermitian matrix, sorted by non-increasing eigenvalue.
///
/// Each eigenvector is phase-normalized so that its entry of largest modulus
/// is real and non-negative; the first such entry wins ties. This makes the
/// decomposition reproducible across runs and platforms that share a solver.
struct EigenDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (a + aᴴ)/2 before solving. Throws DimensionError for non-square input.
EigenDecomposition hermitian_evd(const CMatrix& a);

/// The k eigenvectors of largest eigenvalue as orthonormal columns.
CMatrix dominant_eigenvectors(const CMatrix& a, std::size_t k);

/// Orthogonal projector V Vᴴ onto the span of orthonormal columns V.
CMatrix projector(const CMatrix& orthonormal_columns);

/// Numerical rank of a Hermitian PSD matrix: eigenvalues above
/// rel_threshold · λ_max.
std::size_t numerical_rank(const EigenDecomposition& evd, double rel_threshold = 1e-10);

/// Zeroth-order Bessel function of the first kind.
///
/// Evaluated by Miller's backward recurrence normalized with
/// J₀ + 2ΣJ₂ₖ = 1, which stays accurate to a few ulps of unity over the
/// whole |x| ≤ 100 range the channel model needs.
double bessel_j0(double x);

/// Rescale v so that its largest-modulus entry is real and non-negative.
void fix_phase(Eigen::Ref<CVector> v);

}  // namespace mimo
