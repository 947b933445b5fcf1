#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hkt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

/// Hermitian trace pairing Tr(a b); real for Hermitian arguments.
inline Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
/// The series is summed until the tail bound drops below 1e-16 relative to the
/// scaled norm (well inside the 1e-13 budget).
CMatrix expm(const CMatrix& a);

/// Orthonormal basis (as columns) of the null space of a real matrix.
/// Singular values below `tol * max(1, sigma_max)` count as zero.
RMatrix null_space(const RMatrix& m, double tol);

/// Modified Gram-Schmidt on the columns of `vectors`, dropping columns whose
/// residual norm falls below `tol`. Returns the orthonormal columns kept.
RMatrix gram_schmidt(const RMatrix& vectors, double tol);

/// Kronecker product of small complex matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace hkt
