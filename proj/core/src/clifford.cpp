#include "hkt/error.hpp"
#include "hkt/liealg.hpp"

namespace hkt {

CliffordRep build_clifford(int dimension) {
  if (dimension != 7) throw PreconditionError("build_clifford: only dimension 7 is supported");
  CMatrix one = CMatrix::Identity(2, 2);
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  auto k3 = [](const CMatrix& a, const CMatrix& b, const CMatrix& c) { return kron(kron(a, b), c); };
  CliffordRep out;
  out.gammas = {
      k3(s1, one, one), k3(s2, one, one), k3(s3, s1, one), k3(s3, s2, one),
      k3(s3, s3, s1),   k3(s3, s3, s2),   k3(s3, s3, s3),
  };
  return out;
}

CMatrix CliffordRep::spin_generator(int j, int k) const {
  const auto n = static_cast<int>(gammas.size());
  if (j < 1 || k < 1 || j > n || k > n || j == k) throw PreconditionError("spin_generator: bad plane indices");
  return Complex(0, 0.5) * gammas[static_cast<std::size_t>(j - 1)] * gammas[static_cast<std::size_t>(k - 1)];
}

}  // namespace hkt
