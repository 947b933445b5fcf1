#include "hkt/cstruct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense rank-3 tensor with row-major (a, b, c) layout.
struct Tensor3 {
  Eigen::Index n1 = 0, n2 = 0, n3 = 0;
  std::vector<double> v;

  Tensor3(Eigen::Index a, Eigen::Index b, Eigen::Index c)
      : n1(a), n2(b), n3(c), v(static_cast<std::size_t>(a * b * c), 0.0) {}
  explicit Tensor3(const StructureConstants& f) : n1(f.dim()), n2(f.dim()), n3(f.dim()), v(f.data()) {}

  double& operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) {
    return v[static_cast<std::size_t>((a * n2 + b) * n3 + c)];
  }
  double operator()(Eigen::Index a, Eigen::Index b, Eigen::Index c) const {
    return v[static_cast<std::size_t>((a * n2 + b) * n3 + c)];
  }
  StructureConstants to_cube() const {
    StructureConstants out(static_cast<int>(n1));
    out.data() = v;
    return out;
  }
};

// out(a,b,c) = sum_d m(a,d) t(d,b,c)
Tensor3 contract_first(const RMatrix& m, const Tensor3& t) {
  Tensor3 out(m.rows(), t.n2, t.n3);
  Eigen::Map<const RowMajor> tm(t.v.data(), t.n1, t.n2 * t.n3);
  Eigen::Map<RowMajor> om(out.v.data(), m.rows(), t.n2 * t.n3);
  om.noalias() = m * tm;
  return out;
}

// out(a,b,c) = sum_e m(b,e) t(a,e,c)
Tensor3 contract_second(const RMatrix& m, const Tensor3& t) {
  Tensor3 out(t.n1, m.rows(), t.n3);
  for (Eigen::Index a = 0; a < t.n1; ++a) {
    Eigen::Map<const RowMajor> ta(t.v.data() + a * t.n2 * t.n3, t.n2, t.n3);
    Eigen::Map<RowMajor> oa(out.v.data() + a * m.rows() * t.n3, m.rows(), t.n3);
    oa.noalias() = m * ta;
  }
  return out;
}

// out(a,b,c) = sum_f m(c,f) t(a,b,f)
Tensor3 contract_third(const RMatrix& m, const Tensor3& t) {
  Tensor3 out(t.n1, t.n2, m.rows());
  Eigen::Map<const RowMajor> tm(t.v.data(), t.n1 * t.n2, t.n3);
  Eigen::Map<RowMajor> om(out.v.data(), t.n1 * t.n2, m.rows());
  om.noalias() = tm * m.transpose();
  return out;
}

void require_square(const RMatrix& i, int dim, const char* what) {
  if (i.rows() != dim || i.cols() != dim) {
    throw PreconditionError(std::string(what) + ": structure of size " + std::to_string(i.rows()) +
                            " does not match tensor dimension " + std::to_string(dim));
  }
}

Tensor3 derivative_tensor(const RMatrix& i, const Tensor3& f) {
  // t(N,M,P) = sum_Q I_MQ f_NQP; d_P I_MN = 1/2 t(N,M,P) - 1/2 t(M,N,P).
  const Tensor3 t = contract_second(i, f);
  const Eigen::Index n = f.n1;
  Tensor3 d(n, n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index k = 0; k < n; ++k) d(p, m, k) = 0.5 * (t(k, m, p) - t(m, k, p));
  return d;
}

Tensor3 hull_torsion(const RMatrix& i, const Tensor3& f) {
  const Tensor3 d = derivative_tensor(i, f);
  const Eigen::Index n = f.n1;
  Tensor3 t(n, n, n);
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index s = 0; s < n; ++s)
      for (Eigen::Index r = 0; r < n; ++r) t(q, s, r) = d(q, s, r) + d(s, r, q) + d(r, q, s);
  return contract_third(i, contract_second(i, contract_first(i, t)));
}

RMatrix slice_third(const StructureConstants& f, int p) {
  const int n = f.dim();
  RMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = f(a, b, p);
  return m;
}

RMatrix field_at(const RMatrix& i, const RMatrix& fp, double s) {
  // e(x) for x = s e_P: F = s f_{..P}.
  const RMatrix big_f = s * fp;
  const Eigen::Index n = i.rows();
  const RMatrix e = RMatrix::Identity(n, n) + 0.5 * big_f + (big_f * big_f) / 6.0;
  return e * i * e.inverse();
}

}  // namespace

std::string to_string(BlockTag tag) {
  switch (tag) {
    case BlockTag::ScriptI: return "script-I";
    case BlockTag::ScriptJ: return "script-J";
    case BlockTag::MinusScriptJ: return "minus-script-J";
    case BlockTag::ScriptK: return "script-K";
    case BlockTag::MinusScriptK: return "minus-script-K";
    case BlockTag::Other: return "other";
  }
  return "other";
}

RMatrix BlockFrame::block(const RMatrix& x, int b, double* leakage) const {
  const RMatrix p = basis.middleCols(4 * b, 4);
  RMatrix sub = p.transpose() * x * p;
  if (leakage) *leakage = max_abs(x * p - p * sub);
  return sub;
}

double ComplexStructure::antisymmetry_residual() const { return max_abs(matrix_ + matrix_.transpose()); }

double ComplexStructure::square_residual() const {
  return max_abs(matrix_ * matrix_ + RMatrix::Identity(matrix_.rows(), matrix_.cols()));
}

ComplexStructure ComplexStructure::tagged(const BlockFrame& frame) const {
  std::vector<BlockInfo> blocks;
  for (int b = 0; b < frame.block_count(); ++b) {
    double leak = 0.0;
    const RMatrix sub = frame.block(matrix_, b, &leak);
    blocks.push_back({frame.labels[static_cast<std::size_t>(b)], leak <= 1e-9 ? classify_block(sub) : BlockTag::Other});
  }
  return ComplexStructure(matrix_, std::move(blocks));
}

double CsaPairing::orthonormality_residual() const {
  std::vector<const RVector*> all;
  for (const auto& v : t) all.push_back(&v);
  for (const auto& v : e) all.push_back(&v);
  double worst = 0.0;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a; b < all.size(); ++b)
      worst = std::max(worst, std::abs(all[a]->dot(*all[b]) - (a == b ? 1.0 : 0.0)));
  return worst;
}

ComplexStructure canonical_I_on(int dim, const std::vector<std::pair<int, int>>& root_pairs,
                                const CsaPairing& pairing) {
  if (pairing.t.size() != pairing.e.size()) throw PreconditionError("CSA pairing has unequal t/e counts");
  RMatrix m = RMatrix::Zero(dim, dim);
  for (const auto& [re, im] : root_pairs) {
    m(im, re) = 1.0;
    m(re, im) = -1.0;
  }
  for (std::size_t k = 0; k < pairing.size(); ++k) {
    if (pairing.t[k].size() != dim || pairing.e[k].size() != dim) {
      throw PreconditionError("CSA pairing vectors do not match the tangent dimension");
    }
    m += pairing.e[k] * pairing.t[k].transpose() - pairing.t[k] * pairing.e[k].transpose();
  }
  return ComplexStructure(std::move(m));
}

ComplexStructure canonical_I(const AlgebraRep& rep, const CsaPairing& pairing) {
  const std::size_t abelian = rep.csa_indices().size() + static_cast<std::size_t>(rep.u1_count());
  if (2 * pairing.size() != abelian) {
    std::ostringstream os;
    os << "CSA pairing has " << pairing.size() << " pairs but the CSA + U(1) space of " << rep.name()
       << " has dimension " << abelian;
    if (abelian % 2 == 0) os << " and requires " << abelian / 2 << " pairs";
    else os << ", which is odd; add U(1) padding";
    throw PreconditionError(os.str());
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : rep.root_vector_table()) pairs.emplace_back(e.re, e.im);
  return canonical_I_on(rep.dimension(), pairs, pairing);
}

RMatrix thooft_I() {
  RMatrix m(4, 4);
  m << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  return m;
}

RMatrix thooft_J() {
  RMatrix m(4, 4);
  m << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
  return m;
}

RMatrix thooft_K() {
  RMatrix m(4, 4);
  m << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  return m;
}

double self_duality_residual(const RMatrix& x) {
  auto eps = [](int a, int b, int c, int d) {
    const int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] == p[j]) return 0;
    int sign = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) sign = -sign;
    return sign;
  };
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double dual = 0.0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) dual += 0.5 * eps(a, b, c, d) * x(c, d);
      worst = std::max(worst, std::abs(x(a, b) - dual));
    }
  return worst;
}

BlockTag classify_block(const RMatrix& b, double tol) {
  if (max_abs(b - thooft_I()) <= tol) return BlockTag::ScriptI;
  if (max_abs(b - thooft_J()) <= tol) return BlockTag::ScriptJ;
  if (max_abs(b + thooft_J()) <= tol) return BlockTag::MinusScriptJ;
  if (max_abs(b - thooft_K()) <= tol) return BlockTag::ScriptK;
  if (max_abs(b + thooft_K()) <= tol) return BlockTag::MinusScriptK;
  return BlockTag::Other;
}

double integrability_residual(const RMatrix& i, const StructureConstants& f) {
  require_square(i, f.dim(), "integrability_residual");
  const Tensor3 ft(f);
  const Tensor3 g = contract_second(i, contract_first(i, ft));
  const Eigen::Index n = f.dim();
  double worst = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        worst = std::max(worst, std::abs(ft(a, b, c) - g(a, b, c) - g(b, c, a) - g(c, a, b)));
  return worst;
}

double quaternion_residual(const RMatrix& i, const RMatrix& j, const RMatrix& k) {
  const RMatrix* x[3] = {&i, &j, &k};
  const Eigen::Index n = i.rows();
  if (j.rows() != n || k.rows() != n) throw PreconditionError("quaternion_residual: size mismatch");
  const RMatrix one = RMatrix::Identity(n, n);
  double worst = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      RMatrix r = (*x[p]) * (*x[q]);
      if (p == q) r += one;
      else {
        const int s = 3 - p - q;
        const int sign = ((q - p + 3) % 3 == 1) ? 1 : -1;
        r -= sign * (*x[s]);
      }
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

StructureConstants complex_structure_derivative(const RMatrix& i, const StructureConstants& f) {
  require_square(i, f.dim(), "complex_structure_derivative");
  return derivative_tensor(i, Tensor3(f)).to_cube();
}

double bismut_residual(const RMatrix& i, const StructureConstants& f) {
  require_square(i, f.dim(), "bismut_residual");
  const Tensor3 ft(f);
  const Tensor3 d = derivative_tensor(i, ft);
  const Tensor3 u = contract_first(i.transpose(), ft);  // u(N,P,M) = sum_Q I_QN f_QPM
  const Tensor3 w = contract_first(i, ft);              // w(M,P,N) = sum_Q I_MQ f_QPN
  const Eigen::Index n = f.dim();
  double worst = 0.0;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(d(p, m, k) - 0.5 * u(k, p, m) - 0.5 * w(m, p, k)));
  return worst;
}

RMatrix metric_at(const StructureConstants& f, const RVector& x) {
  const int n = f.dim();
  if (x.size() != n) throw PreconditionError("metric_at: coordinate dimension mismatch");
  RMatrix big_f = RMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    if (x(p) != 0.0) big_f += x(p) * slice_third(f, p);
  return RMatrix::Identity(n, n) - (big_f * big_f.transpose()) / 12.0;
}

RMatrix vielbein_at(const StructureConstants& f, const RVector& x) {
  const int n = f.dim();
  if (x.size() != n) throw PreconditionError("vielbein_at: coordinate dimension mismatch");
  RMatrix big_f = RMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    if (x(p) != 0.0) big_f += x(p) * slice_third(f, p);
  return RMatrix::Identity(n, n) + 0.5 * big_f + (big_f * big_f) / 6.0;
}

RMatrix metric_at(const AlgebraRep& rep, const RVector& x) { return metric_at(structure_constants(rep), x); }
RMatrix vielbein_at(const AlgebraRep& rep, const RVector& x) { return vielbein_at(structure_constants(rep), x); }

StructureConstants torsion_via_hull(const RMatrix& i, const StructureConstants& f, double tol) {
  require_square(i, f.dim(), "torsion_via_hull");
  const double r = integrability_residual(i, f);
  if (r > tol) {
    std::ostringstream os;
    os << "torsion_via_hull requires an integrable structure; integrability residual " << r << " exceeds " << tol;
    throw PreconditionError(os.str());
  }
  return hull_torsion(i, Tensor3(f)).to_cube();
}

double torsion_match_residual(const StructureConstants& c, const StructureConstants& f) {
  if (c.dim() != f.dim()) throw PreconditionError("torsion_match_residual: size mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < c.data().size(); ++k) worst = std::max(worst, std::abs(c.data()[k] - f.data()[k]));
  return worst;
}

NijenhuisResult nijenhuis_at_origin(const RMatrix& i, const StructureConstants& f, double h) {
  require_square(i, f.dim(), "nijenhuis_at_origin");
  if (!(h > 0)) throw PreconditionError("nijenhuis_at_origin: step must be positive");
  const Eigen::Index n = f.dim();
  Tensor3 d_h(n, n, n), d_half(n, n, n);  // d(M, N, K) = d_M I_N^K
  for (int m = 0; m < n; ++m) {
    const RMatrix fp = slice_third(f, m);
    const RMatrix a = (field_at(i, fp, h) - field_at(i, fp, -h)) / (2 * h);
    const RMatrix b = (field_at(i, fp, h / 2) - field_at(i, fp, -h / 2)) / h;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        d_h(m, r, c) = a(r, c);
        d_half(m, r, c) = b(r, c);
      }
  }
  NijenhuisResult out;
  Tensor3 d(n, n, n);
  double scale = 0.0;
  for (std::size_t k = 0; k < d.v.size(); ++k) {
    d.v[k] = (4.0 * d_half.v[k] - d_h.v[k]) / 3.0;
    out.richardson_gap = std::max(out.richardson_gap, std::abs(d.v[k] - d_half.v[k]));
    scale = std::max(scale, std::abs(d.v[k]));
  }
  // A(M,N,K) = d_[M I_N]^K
  Tensor3 a(n, n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index c = 0; c < n; ++c) a(m, k, c) = 0.5 * (d(m, k, c) - d(k, m, c));
  const Tensor3 b = contract_second(i, contract_first(i, a));
  for (std::size_t k = 0; k < a.v.size(); ++k) out.residual = std::max(out.residual, std::abs(a.v[k] - b.v[k]));
  if (out.richardson_gap > 1e-4 * std::max(1.0, scale)) {
    out.step_warning = true;
    std::ostringstream os;
    os << "finite-difference step " << h << " looks " << (h > 1e-3 ? "too large" : "too small")
       << ": Richardson correction " << out.richardson_gap;
    out.warning = os.str();
  }
  return out;
}

double GeometryResidualReport::max() const {
  return std::max({integrability, square, bismut, torsion_match, nijenhuis});
}

GeometryResidualReport geometry_residuals(const RMatrix& i, const StructureConstants& f, double /*tol*/,
                                          double fd_step) {
  require_square(i, f.dim(), "geometry_residuals");
  GeometryResidualReport r;
  r.integrability = integrability_residual(i, f);
  r.square = max_abs(i * i + RMatrix::Identity(i.rows(), i.cols()));
  r.bismut = bismut_residual(i, f);
  r.torsion_match = torsion_match_residual(hull_torsion(i, Tensor3(f)).to_cube(), f);
  const NijenhuisResult n = nijenhuis_at_origin(i, f, fd_step);
  r.nijenhuis = n.residual;
  r.warning = n.warning;
  return r;
}

RMatrix random_complex_structure(int dim, std::mt19937_64& rng) {
  if (dim % 2 != 0) throw PreconditionError("random_complex_structure: dimension must be even");
  std::normal_distribution<double> normal;
  RMatrix g(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) g(a, b) = normal(rng);
  const RMatrix q = Eigen::HouseholderQR<RMatrix>(g).householderQ();
  RMatrix i0 = RMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    i0(k + 1, k) = 1.0;
    i0(k, k + 1) = -1.0;
  }
  return q * i0 * q.transpose();
}

StructureConstants restrict_structure_constants(const StructureConstants& f, const RMatrix& w) {
  if (w.rows() != f.dim()) throw PreconditionError("restrict_structure_constants: size mismatch");
  const RMatrix wt = w.transpose();
  return contract_third(wt, contract_second(wt, contract_first(wt, Tensor3(f)))).to_cube();
}

}  // namespace hkt
