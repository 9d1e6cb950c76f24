#include "mimo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  CMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

void fix_phase(Eigen::Ref<CVector> v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  double best_abs = std::abs(v(0));
  // A relative slack keeps the pick stable when two entries tie up to rounding.
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_abs * (1.0 + 1e-12)) {
      best = i;
      best_abs = m;
    }
  }
  if (best_abs == 0.0) return;
  v *= std::conj(v(best)) / best_abs;
  v(best) = cdouble(best_abs, 0.0);
}

EigenDecomposition hermitian_evd(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("hermitian_evd: expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw ArgumentError("hermitian_evd: non-finite entries");
  }
  const Eigen::Index n = a.rows();
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("hermitian_evd: eigensolver did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index j = 0; j < n; ++j) {
    fix_phase(out.eigenvectors.col(j));
  }
  return out;
}

CMatrix dominant_eigenvectors(const CMatrix& a, std::size_t k) {
  if (a.rows() != a.cols()) {
    throw DimensionError("dominant_eigenvectors: expected a square matrix");
  }
  if (k < 1 || k > static_cast<std::size_t>(a.rows())) {
    throw ArgumentError("dominant_eigenvectors: k=" + std::to_string(k) +
                        " outside [1, " + std::to_string(a.rows()) + "]");
  }
  EigenDecomposition evd = hermitian_evd(a);
  return evd.eigenvectors.leftCols(static_cast<Eigen::Index>(k));
}

CMatrix projector(const CMatrix& orthonormal_columns) {
  return orthonormal_columns * orthonormal_columns.adjoint();
}

std::size_t numerical_rank(const EigenDecomposition& evd, double rel_threshold) {
  if (evd.eigenvalues.size() == 0) return 0;
  const double top = evd.eigenvalues(0);
  if (top <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < evd.eigenvalues.size(); ++i) {
    if (evd.eigenvalues(i) > rel_threshold * top) ++r;
  }
  return r;
}

double bessel_j0(double x) {
  if (!std::isfinite(x)) {
    throw ArgumentError("bessel_j0: non-finite argument");
  }
  const double ax = std::abs(x);
  if (ax < 1e-8) return 1.0 - 0.25 * ax * ax;

  // Even start order comfortably above ax so J_n has decayed far below eps.
  int start = static_cast<int>(ax + 30.0 + 6.0 * std::cbrt(ax));
  start += start % 2;

  const double two_over_x = 2.0 / ax;
  double j_next = 0.0;   // J_{n+1}
  double j_curr = 1e-30; // J_n (unnormalized)
  double even_sum = 0.0; // Σ J_{2k}, k ≥ 1
  for (int n = start; n > 0; --n) {
    const double j_prev = n * two_over_x * j_curr - j_next;
    j_next = j_curr;
    j_curr = j_prev;
    // j_curr now holds J_{n-1}.
    if ((n - 1) % 2 == 0 && n - 1 > 0) even_sum += j_curr;
    if (std::abs(j_curr) > 1e250) {
      j_curr *= 1e-250;
      j_next *= 1e-250;
      even_sum *= 1e-250;
    }
  }
  return j_curr / (j_curr + 2.0 * even_sum);
}

}  // namespace mimo
