#include "hkt/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

RepKind default_rep_kind(Family family) {
  return family == Family::A || family == Family::C ? RepKind::Defining : RepKind::Vector;
}

namespace {

CMatrix elementary(int d, int i, int j) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

/// Hermitian matrix <-> real vector of (Re, Im) entries. The Euclidean inner
/// product of two such vectors equals Tr(x y) for Hermitian x, y.
RVector flatten(const CMatrix& m) {
  RVector v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      v(k++) = m(i, j).real();
      v(k++) = m(i, j).imag();
    }
  return v;
}

CMatrix unflatten(const RVector& v, Eigen::Index d) {
  CMatrix m(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = Complex(v(k), v(k + 1));
      k += 2;
    }
  return m;
}

/// Orthonormalizes Hermitian matrices in the trace form and rescales them to
/// Tr(t t) = C.
std::vector<CMatrix> orthonormalize(const std::vector<CMatrix>& span, double norm_const) {
  if (span.empty()) return {};
  const Eigen::Index d = span.front().rows();
  RMatrix cols(2 * d * d, static_cast<Eigen::Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = flatten(span[k]);
  const RMatrix q = gram_schmidt(cols, 1e-8);
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < q.cols(); ++k) out.push_back(unflatten(q.col(k), d) * std::sqrt(norm_const));
  return out;
}

CMatrix vector_rotation(int d, int j, int k) {
  // i (E_jk - E_kj): same commutation relations as the spinor T_jk.
  return Complex(0, 1) * (elementary(d, j, k) - elementary(d, k, j));
}

std::vector<CMatrix> hermitian_elementary_basis(int d) {
  std::vector<CMatrix> out;
  for (int i = 0; i < d; ++i) out.push_back(elementary(d, i, i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      out.push_back(elementary(d, i, j) + elementary(d, j, i));
      out.push_back(Complex(0, -1) * (elementary(d, i, j) - elementary(d, j, i)));
    }
  return out;
}

int matrix_dim_for(Family family, int rank, RepKind kind) {
  switch (kind) {
    case RepKind::Defining: return family == Family::A ? rank + 1 : 2 * rank;
    case RepKind::Vector: return family == Family::B ? 2 * rank + 1 : 2 * rank;
    case RepKind::Spinor: return 8;
  }
  return 0;
}

std::string kind_name(RepKind kind) {
  switch (kind) {
    case RepKind::Defining: return "defining";
    case RepKind::Vector: return "vector";
    case RepKind::Spinor: return "spinor";
  }
  return "?";
}

// Square roots of distinct primes are linearly independent over Q, so these
// weights separate all roots.
double generic_weight(std::size_t i) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  return std::sqrt(static_cast<double>(primes[i % 16])) * (1.0 + static_cast<double>(i / 16));
}

}  // namespace

AlgebraRep generic_rep(Family family, int rank, RepKind kind) {
  check_family_rank(family, rank);
  const bool ok = (kind == RepKind::Defining && (family == Family::A || family == Family::C)) ||
                  (kind == RepKind::Vector && (family == Family::B || family == Family::D)) ||
                  (kind == RepKind::Spinor && family == Family::B && rank == 3);
  if (!ok) {
    throw PreconditionError("no " + kind_name(kind) + " representation for " + std::string(1, to_char(family)) +
                            std::to_string(rank));
  }
  const int d = matrix_dim_for(family, rank, kind);
  FactorBlock fb;
  fb.roots = RootSystem::build(family, rank);
  fb.kind = kind;
  fb.matrix_offset = 0;
  fb.matrix_dim = d;

  std::vector<CMatrix> span;
  if (kind == RepKind::Spinor) {
    const CliffordRep cl = build_clifford(7);
    for (int j = 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k) span.push_back(cl.spin_generator(j, k));
    for (int k = 0; k < rank; ++k) fb.csa_coordinate_basis.push_back(cl.spin_generator(2 * k + 1, 2 * k + 2));
  } else if (family == Family::A) {
    for (const auto& x : hermitian_elementary_basis(d))
      span.push_back(x - (x.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d));
    for (int k = 0; k < d; ++k) fb.csa_coordinate_basis.push_back(elementary(d, k, k));
  } else if (family == Family::C) {
    CMatrix j = CMatrix::Zero(d, d);
    j.topRightCorner(rank, rank) = CMatrix::Identity(rank, rank);
    j.bottomLeftCorner(rank, rank) = -CMatrix::Identity(rank, rank);
    for (const auto& x : hermitian_elementary_basis(d)) span.push_back((x + j * x.transpose() * j) / 2.0);
    for (int k = 0; k < rank; ++k)
      fb.csa_coordinate_basis.push_back(elementary(d, k, k) - elementary(d, k + rank, k + rank));
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) span.push_back(vector_rotation(d, a, b));
    for (int k = 0; k < rank; ++k) fb.csa_coordinate_basis.push_back(vector_rotation(d, 2 * k, 2 * k + 1));
  }

  AlgebraRep rep;
  rep.matrix_dim_ = d;
  rep.generators_ = orthonormalize(span, rep.norm_const_);
  if (rep.dimension() != fb.roots.dimension()) {
    throw ConstructionError("orthonormalization of " + fb.roots.name() + " produced " +
                            std::to_string(rep.dimension()) + " generators, expected " +
                            std::to_string(fb.roots.dimension()));
  }
  fb.generator_offset = 0;
  fb.generator_count = rep.dimension();
  rep.factors_.push_back(std::move(fb));
  return rep;
}

std::vector<CMatrix> chevalley_root_vectors(const AlgebraRep& rep, const RootSystem& rs, int factor, double tol) {
  const FactorBlock& fb = rep.factor(factor);
  if (fb.roots.type() != rs.type()) {
    throw PreconditionError("chevalley_root_vectors: root system " + rs.name() + " does not match factor " +
                            fb.roots.name());
  }
  const double c = rep.norm_const();
  const int n = fb.generator_count;
  const auto& simple = rs.simple_roots();

  CMatrix h = CMatrix::Zero(rep.matrix_dim(), rep.matrix_dim());
  std::vector<double> w(simple.size());
  for (std::size_t i = 0; i < simple.size(); ++i) {
    w[i] = generic_weight(i);
    h += w[i] * rep.coroot_matrix(factor, simple[i].coords);
  }
  auto eigenvalue = [&](const Coords& beta) {
    double v = 0.0;
    for (std::size_t i = 0; i < simple.size(); ++i) v += w[i] * dot(beta, coroot(simple[i].coords));
    return v;
  };

  CMatrix ad(n, n);
  for (int a = 0; a < n; ++a) {
    const CMatrix comm = commutator(h, rep.generator(fb.generator_offset + a));
    for (int b = 0; b < n; ++b) ad(b, a) = trace_product(comm, rep.generator(fb.generator_offset + b)) / c;
  }

  auto check_normalization = [&](const CMatrix& x, const Root& root) {
    const double err = max_abs(commutator(x, x.adjoint()) - rep.coroot_matrix(factor, root.coords));
    if (err > std::max(tol, 1e-9) * 10) {
      std::ostringstream os;
      os << "phase fixing failed for root " << rs.label(root.coords) << " of " << rs.name()
         << ": |[E, E^dagger] - coroot| = " << err;
      throw ConstructionError(os.str());
    }
  };

  const auto& positive = rs.positive_roots();
  std::vector<CMatrix> e(positive.size());
  for (std::size_t i = 0; i < simple.size(); ++i) {
    const Root& alpha = simple[i];
    const CMatrix m = ad - eigenvalue(alpha.coords) * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    const double thresh = 1e-6 * std::max(1.0, sv(0));
    int zero = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) zero += sv(k) <= thresh ? 1 : 0;
    if (zero != 1) {
      throw ConstructionError("degenerate eigenspace for simple root " + rs.label(alpha.coords) + " of " +
                              rs.name() + " (dimension " + std::to_string(zero) + ")");
    }
    const CVector coeffs = svd.matrixV().col(n - 1);
    CMatrix x = CMatrix::Zero(rep.matrix_dim(), rep.matrix_dim());
    for (int a = 0; a < n; ++a) x += coeffs(a) * rep.generator(fb.generator_offset + a);

    const CMatrix hv = rep.coroot_matrix(factor, alpha.coords);
    const double lambda = trace_product(commutator(x, x.adjoint()), hv).real() / trace_product(hv, hv).real();
    if (!(lambda > 0)) {
      throw ConstructionError("phase fixing failed for root " + rs.label(alpha.coords) + ": [E, E^dagger] has no " +
                              "positive projection on the coroot");
    }
    x /= std::sqrt(lambda);
    const double cutoff = 1e-6 * max_abs(x);
    Complex lead = 0.0;
    for (Eigen::Index r = 0; r < x.rows() && lead == 0.0; ++r)
      for (Eigen::Index col = 0; col < x.cols(); ++col)
        if (std::abs(x(r, col)) > cutoff) {
          lead = x(r, col);
          break;
        }
    x *= std::conj(lead) / std::abs(lead);
    check_normalization(x, alpha);
    e[*rs.positive_index(alpha.coords)] = std::move(x);
  }

  for (std::size_t k = 0; k < positive.size(); ++k) {
    const Root& beta = positive[k];
    if (beta.height() == 1) continue;
    bool done = false;
    for (std::size_t i = 0; i < simple.size() && !done; ++i) {
      const Coords rest = beta.coords - simple[i].coords;
      const auto j = rs.positive_index(rest);
      if (!j) continue;
      const int q = rs.bourbaki_q(simple[i].coords, rest);
      e[k] = commutator(e[*rs.positive_index(simple[i].coords)], e[*j]) / static_cast<double>(q + 1);
      done = true;
    }
    if (!done) throw ConstructionError("internal: root " + rs.label(beta.coords) + " is not reachable");
    check_normalization(e[k], beta);
  }
  return e;
}

AlgebraRep align_to_root_vectors(const AlgebraRep& rep, const std::vector<CMatrix>& root_vectors) {
  if (rep.factors().size() != 1 || rep.u1_count() != 0) {
    throw PreconditionError("align_to_root_vectors expects a single simple factor without U(1) generators");
  }
  const FactorBlock& src = rep.factor(0);
  const double c = rep.norm_const();
  AlgebraRep out;
  out.norm_const_ = c;
  out.matrix_dim_ = rep.matrix_dim();
  FactorBlock fb = src;
  fb.generator_offset = 0;
  fb.root_table_offset = 0;

  const auto& positive = src.roots.positive_roots();
  if (root_vectors.size() != positive.size()) throw PreconditionError("root vector count mismatch");
  for (std::size_t k = 0; k < positive.size(); ++k) {
    const CMatrix& e = root_vectors[k];
    const double scale = std::sqrt(trace_product(e, e.adjoint()).real() / (2.0 * c));
    const CMatrix re = (e + e.adjoint()) / (2.0 * scale);
    const CMatrix im = (e - e.adjoint()) / (Complex(0, 2) * scale);
    RootVectorEntry entry;
    entry.factor = 0;
    entry.root = k;
    entry.re = out.dimension();
    out.generators_.push_back(re);
    entry.im = out.dimension();
    out.generators_.push_back(im);
    entry.scale = scale;
    out.root_table_.push_back(entry);
  }
  std::vector<CMatrix> coroots;
  for (const auto& s : src.roots.simple_roots()) coroots.push_back(rep.coroot_matrix(0, s.coords));
  for (auto& t : orthonormalize(coroots, c)) {
    out.csa_indices_.push_back(out.dimension());
    out.generators_.push_back(std::move(t));
  }
  fb.generator_count = out.dimension();
  out.factors_.push_back(std::move(fb));

  const int dim = out.dimension();
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      const double err = std::abs(trace_product(out.generator(a), out.generator(b)) - (a == b ? c : 0.0));
      if (err > 1e-9) {
        std::ostringstream os;
        os << "orthonormalization failed for generator pair (" << a << ", " << b << ") of "
           << out.factor(0).roots.name() << ": |Tr(t_a t_b) - C delta| = " << err;
        throw ConstructionError(os.str());
      }
    }
  if (dim != src.roots.dimension()) throw ConstructionError("aligned basis has wrong dimension for " + out.name());
  return out;
}

AlgebraRep direct_sum(const std::vector<AlgebraRep>& parts, int u1_count) {
  if (u1_count < 0) throw PreconditionError("u1_count must be non-negative");
  AlgebraRep out;
  int d = 0;
  for (const auto& p : parts) {
    if (p.u1_count() != 0 || !p.root_aligned()) {
      throw PreconditionError("direct_sum expects root-aligned parts without U(1) generators");
    }
    d += p.matrix_dim();
  }
  d += u1_count;
  out.matrix_dim_ = d;

  auto embed = [d](const CMatrix& m, int offset) {
    CMatrix big = CMatrix::Zero(d, d);
    big.block(offset, offset, m.rows(), m.cols()) = m;
    return big;
  };

  int offset = 0;
  for (const auto& p : parts) {
    const int gen_base = out.dimension();
    const int root_base = static_cast<int>(out.root_table_.size());
    const int factor_base = static_cast<int>(out.factors_.size());
    for (const auto& t : p.generators()) out.generators_.push_back(embed(t, offset));
    for (int idx : p.csa_indices()) out.csa_indices_.push_back(gen_base + idx);
    for (auto entry : p.root_vector_table()) {
      entry.factor += factor_base;
      entry.re += gen_base;
      entry.im += gen_base;
      out.root_table_.push_back(entry);
    }
    for (const auto& f : p.factors()) {
      FactorBlock fb = f;
      fb.matrix_offset += offset;
      fb.generator_offset += gen_base;
      fb.root_table_offset += root_base;
      for (auto& h : fb.csa_coordinate_basis) h = embed(h, offset);
      out.factors_.push_back(std::move(fb));
    }
    offset += p.matrix_dim();
  }
  const double s = std::sqrt(out.norm_const_);
  for (int k = 0; k < u1_count; ++k) {
    CMatrix u = CMatrix::Zero(d, d);
    u(offset + k, offset + k) = s;
    out.u1_indices_.push_back(out.dimension());
    out.generators_.push_back(std::move(u));
  }
  return out;
}

AlgebraRep build_matrix_rep(Family family, int rank, int u1_count, RepKind kind) {
  const AlgebraRep generic = generic_rep(family, rank, kind);
  const auto e = chevalley_root_vectors(generic, generic.factor(0).roots);
  return direct_sum({align_to_root_vectors(generic, e)}, u1_count);
}

AlgebraRep build_matrix_rep(Family family, int rank, int u1_count) {
  return build_matrix_rep(family, rank, u1_count, default_rep_kind(family));
}

AlgebraRep build_matrix_rep(const std::vector<CartanType>& factors, int u1_count) {
  std::vector<AlgebraRep> parts;
  for (const auto& t : factors) {
    const AlgebraRep generic = generic_rep(t.family, t.rank, default_rep_kind(t.family));
    parts.push_back(align_to_root_vectors(generic, chevalley_root_vectors(generic, generic.factor(0).roots)));
  }
  return direct_sum(parts, u1_count);
}

const RootVectorEntry& AlgebraRep::root_entry(int f, std::size_t root) const {
  const FactorBlock& fb = factor(f);
  if (root_table_.empty() || root >= fb.roots.positive_roots().size()) {
    throw PreconditionError("no root-vector entry for root " + std::to_string(root) + " of factor " +
                            std::to_string(f));
  }
  return root_table_[static_cast<std::size_t>(fb.root_table_offset) + root];
}

CMatrix AlgebraRep::root_vector(int f, const Coords& root) const {
  const auto& rs = factor(f).roots;
  if (auto k = rs.positive_index(root)) {
    const auto& e = root_entry(f, *k);
    return e.scale * (generator(e.re) + Complex(0, 1) * generator(e.im));
  }
  if (auto k = rs.positive_index(-root)) {
    const auto& e = root_entry(f, *k);
    return e.scale * (generator(e.re) - Complex(0, 1) * generator(e.im));
  }
  throw PreconditionError("root_vector: coordinates are not a root of " + rs.name());
}

CMatrix AlgebraRep::csa_element(int f, const Coords& v) const {
  const FactorBlock& fb = factor(f);
  if (v.size() != fb.csa_coordinate_basis.size()) throw PreconditionError("csa_element: dimension mismatch");
  CMatrix h = CMatrix::Zero(matrix_dim_, matrix_dim_);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) h += static_cast<double>(v[k]) * fb.csa_coordinate_basis[k];
  return h;
}

CVector AlgebraRep::coordinates(const CMatrix& x) const {
  CVector c(dimension());
  for (int a = 0; a < dimension(); ++a) c(a) = trace_product(x, generator(a)) / norm_const_;
  return c;
}

RVector AlgebraRep::real_coordinates(const CMatrix& x) const { return coordinates(x).real(); }

CMatrix AlgebraRep::from_coordinates(const RVector& c) const {
  CMatrix x = CMatrix::Zero(matrix_dim_, matrix_dim_);
  for (int a = 0; a < dimension(); ++a)
    if (c(a) != 0.0) x += c(a) * generator(a);
  return x;
}

CMatrix AlgebraRep::from_coordinates(const CVector& c) const {
  CMatrix x = CMatrix::Zero(matrix_dim_, matrix_dim_);
  for (int a = 0; a < dimension(); ++a)
    if (c(a) != 0.0) x += c(a) * generator(a);
  return x;
}

bool AlgebraRep::faithful_for_simply_connected() const {
  return std::none_of(factors_.begin(), factors_.end(),
                      [](const FactorBlock& f) { return f.kind == RepKind::Vector; });
}

std::string AlgebraRep::name() const {
  std::string s;
  for (const auto& f : factors_) s += (s.empty() ? "" : "+") + f.roots.name();
  if (u1_count() > 0) s += (s.empty() ? "" : "+") + std::string("U1^") + std::to_string(u1_count());
  return s.empty() ? "0" : s;
}

double AlgebraRep::orthonormality_residual() const {
  double worst = 0.0;
  for (int a = 0; a < dimension(); ++a)
    for (int b = a; b < dimension(); ++b)
      worst = std::max(worst, std::abs(trace_product(generator(a), generator(b)) - (a == b ? norm_const_ : 0.0)));
  return worst;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

StructureConstants structure_constants(const AlgebraRep& rep) {
  const int n = rep.dimension();
  const double c = rep.norm_const();
  StructureConstants f(n);
  // Generators of different factors commute, so only same-factor pairs need
  // the trace; f is zero elsewhere.
  for (const auto& fb : rep.factors()) {
    const int lo = fb.generator_offset, hi = fb.generator_offset + fb.generator_count;
    for (int a = lo; a < hi; ++a)
      for (int b = a + 1; b < hi; ++b) {
        const CMatrix comm = commutator(rep.generator(a), rep.generator(b));
        for (int k = lo; k < hi; ++k) {
          const double v = (Complex(0, -1) * trace_product(comm, rep.generator(k))).real() / c;
          f(a, b, k) = v;
          f(b, a, k) = -v;
        }
      }
  }
  return f;
}

double antisymmetry_residual(const StructureConstants& f) {
  const int n = f.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        worst = std::max(worst, std::abs(f(a, b, c) + f(b, a, c)));
        worst = std::max(worst, std::abs(f(a, b, c) + f(a, c, b)));
      }
  return worst;
}

double jacobi_residual(const StructureConstants& f) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Strided = Eigen::Map<const RowMajor, 0, Eigen::OuterStride<>>;
  const Eigen::Index n = f.dim();
  if (n == 0) return 0.0;
  const double* data = f.data().data();
  // Q(E, (C,D)) = f_ECD; R((B,C), E) = f_BCE.
  const Eigen::Map<const RowMajor> q(data, n, n * n);
  const Eigen::Map<const RowMajor> r(data, n * n, n);
  double worst = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    // term1(B,(C,D)) = sum_E f_ABE f_ECD
    const Eigen::Map<const RowMajor> p_a(data + a * n * n, n, n);
    const RowMajor t1 = p_a * q;
    // term2((B,C),D) = sum_E f_BCE f_EAD
    const Strided s_a(data + a * n, n, n, Eigen::OuterStride<>(n * n));
    const RowMajor t2 = r * s_a;
    // term3(C,(B,D)) = sum_E f_CAE f_EBD
    const Strided m_a(data + a * n, n, n, Eigen::OuterStride<>(n * n));
    const RowMajor t3 = m_a * q;
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d) {
          const double v = t1(b, c * n + d) + t2(b * n + c, d) + t3(c, b * n + d);
          worst = std::max(worst, std::abs(v));
        }
  }
  return worst;
}

double closure_residual(const AlgebraRep& rep, const StructureConstants& f) {
  const int n = rep.dimension();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      CMatrix diff = commutator(rep.generator(a), rep.generator(b));
      for (int c = 0; c < n; ++c)
        if (f(a, b, c) != 0.0) diff -= Complex(0, f(a, b, c)) * rep.generator(c);
      worst = std::max(worst, max_abs(diff));
    }
  return worst;
}

double chevalley_residual(const AlgebraRep& rep) {
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.factors().size(); ++k) {
    const int f = static_cast<int>(k);
    for (const auto& root : rep.factor(f).roots.positive_roots()) {
      const CMatrix e = rep.root_vector(f, root.coords);
      const CMatrix em = rep.root_vector(f, -root.coords);
      worst = std::max(worst, max_abs(commutator(e, em) - rep.coroot_matrix(f, root.coords)));
    }
  }
  return worst;
}

PeriodicityResult coroot_periodicity_check(const AlgebraRep& rep, const CMatrix& coroot_element, double tol) {
  if (!rep.faithful_for_simply_connected()) {
    throw PreconditionError(
        "coroot_periodicity_check needs a representation faithful for the simply connected group; the vector "
        "representation of B/D identifies exp(i pi X) with 1 for short coroots. Use the spinor representation.");
  }
  const Eigen::Index d = coroot_element.rows();
  const CMatrix one = CMatrix::Identity(d, d);
  auto exp_at = [&](double phi) { return expm(Complex(0, phi) * coroot_element); };
  PeriodicityResult out;
  out.period_residual = max_abs(exp_at(2.0 * std::numbers::pi) - one);
  out.period_ok = out.period_residual <= std::max(tol, 1e-10);
  out.min_sample_distance = std::numeric_limits<double>::infinity();
  for (double phi : {std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2})
    out.min_sample_distance = std::min(out.min_sample_distance, max_abs(exp_at(phi) - one));
  out.min_nontrivial = out.min_sample_distance > 1e-6;
  return out;
}

}  // namespace hkt
