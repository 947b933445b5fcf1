#include "hkt/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hkt {

CMatrix expm(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  // One-norm based scaling so the scaled matrix has norm <= 1/2.
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);
  const double scaled_norm = norm / std::ldexp(1.0, squarings);

  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  double term_bound = 1.0;
  for (int k = 1; k < 64; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    term_bound *= scaled_norm / k;
    // Remaining tail is bounded by term_bound * x/(1-x) with x = norm/(k+1).
    const double x = scaled_norm / (k + 1);
    if (term_bound * x / (1.0 - x) < 1e-17) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

RMatrix null_space(const RMatrix& m, double tol) {
  if (m.cols() == 0) return RMatrix(0, 0);
  if (m.rows() == 0) return RMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * scale) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

RMatrix gram_schmidt(const RMatrix& vectors, double tol) {
  std::vector<RVector> kept;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    RVector v = vectors.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q.dot(v) * q;
    const double len = v.norm();
    if (len > tol) kept.push_back(v / len);
  }
  RMatrix out(vectors.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace hkt
