#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hkt/linalg.hpp"
#include "hkt/rootsys.hpp"

namespace hkt {

/// Global zero tolerance used by constructions unless a caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

/// Generators are normalized as Tr(t_A t_B) = C delta_AB with this C for
/// every family (the usual value for the defining representation of SU(N)).
inline constexpr double kNormConst = 0.5;

enum class RepKind {
  Defining,  ///< A_n: (n+1)-dim, C_n: 2n-dim
  Vector,    ///< B_n: (2n+1)-dim, D_n: 2n-dim
  Spinor,    ///< B_3 only: 8-dim, from the Clifford algebra
};

RepKind default_rep_kind(Family family);

/// One simple factor placed as a diagonal block of the full matrices.
struct FactorBlock {
  RootSystem roots;
  RepKind kind = RepKind::Defining;
  int matrix_offset = 0;
  int matrix_dim = 0;
  /// Block matrices H(e_k) for the ambient orthogonal coordinates, so that
  /// [H(v), E_beta] = (beta . v) E_beta.
  std::vector<CMatrix> csa_coordinate_basis;
  /// Generator index ranges belonging to this factor.
  int generator_offset = 0;
  int generator_count = 0;
  /// Position of this factor's first entry in the root-vector table.
  int root_table_offset = 0;
};

/// E_alpha = scale * (t_re + i t_im) for a positive root; E_{-alpha} = E_alpha^dagger.
struct RootVectorEntry {
  int factor = 0;
  std::size_t root = 0;  ///< index into roots.positive_roots()
  int re = 0;
  int im = 0;
  double scale = 1.0;
};

/// Orthonormal Hermitian basis of a compact reductive algebra realized by
/// block-diagonal matrices. Immutable once built.
///
/// Generator order for a root-aligned representation: per simple factor, the
/// pairs (t_re, t_im) of every positive root in positive-root order, then an
/// orthonormal CSA basis; all U(1) generators come last.
class AlgebraRep {
 public:
  double norm_const() const { return norm_const_; }
  int dimension() const { return static_cast<int>(generators_.size()); }
  int matrix_dim() const { return matrix_dim_; }

  const std::vector<CMatrix>& generators() const { return generators_; }
  const CMatrix& generator(int a) const { return generators_[static_cast<std::size_t>(a)]; }

  /// CSA generators of the simple factors (U(1) generators excluded).
  const std::vector<int>& csa_indices() const { return csa_indices_; }
  const std::vector<int>& u1_indices() const { return u1_indices_; }
  int u1_count() const { return static_cast<int>(u1_indices_.size()); }

  const std::vector<FactorBlock>& factors() const { return factors_; }
  const FactorBlock& factor(int f) const { return factors_[static_cast<std::size_t>(f)]; }

  bool root_aligned() const { return !root_table_.empty() || factors_.empty(); }
  const std::vector<RootVectorEntry>& root_vector_table() const { return root_table_; }
  const RootVectorEntry& root_entry(int factor, std::size_t root) const;

  /// E_beta for a positive or negative root of the given factor.
  CMatrix root_vector(int factor, const Coords& root) const;
  /// Matrix H(v) of the CSA element with ambient coordinates v.
  CMatrix csa_element(int factor, const Coords& v) const;
  CMatrix coroot_matrix(int factor, const Coords& root) const { return csa_element(factor, coroot(root)); }

  /// Complex coefficients (1/C) Tr(x t_A).
  CVector coordinates(const CMatrix& x) const;
  /// Real coefficients of a Hermitian element.
  RVector real_coordinates(const CMatrix& x) const;
  CMatrix from_coordinates(const RVector& c) const;
  CMatrix from_coordinates(const CVector& c) const;

  /// True when every simple factor acts faithfully for its simply connected
  /// group (defining reps of A/C, the spinor rep of B3).
  bool faithful_for_simply_connected() const;

  /// e.g. "A2", "B3+U1^3", "A1+A2+U1^1".
  std::string name() const;

  /// Max |Tr(t_A t_B) - C delta_AB|.
  double orthonormality_residual() const;

 private:
  friend AlgebraRep generic_rep(Family, int, RepKind);
  friend AlgebraRep align_to_root_vectors(const AlgebraRep&, const std::vector<CMatrix>&);
  friend AlgebraRep direct_sum(const std::vector<AlgebraRep>&, int);

  double norm_const_ = kNormConst;
  int matrix_dim_ = 0;
  std::vector<CMatrix> generators_;
  std::vector<int> csa_indices_;
  std::vector<int> u1_indices_;
  std::vector<FactorBlock> factors_;
  std::vector<RootVectorEntry> root_table_;
};

/// Orthonormal Hermitian basis of a single simple algebra obtained by
/// projecting all Hermitian elementary matrices onto the algebra and running
/// Gram-Schmidt. Not root-aligned.
AlgebraRep generic_rep(Family family, int rank, RepKind kind);

/// Chevalley root vectors E_alpha (one per positive root of `rs`, in
/// positive-root order) for factor `factor` of `rep`. Simple-root vectors are
/// simultaneous eigenvectors of the CSA adjoint action, normalized so that
/// [E_alpha, E_alpha^dagger] = alpha^vee with the leading nonzero entry real
/// positive; the others are [E_{alpha_i}, E_gamma] / (q + 1).
std::vector<CMatrix> chevalley_root_vectors(const AlgebraRep& rep, const RootSystem& rs, int factor = 0,
                                            double tol = kDefaultTolerance);

/// Rebuilds the generators of a single-factor rep from its Chevalley vectors.
AlgebraRep align_to_root_vectors(const AlgebraRep& rep, const std::vector<CMatrix>& root_vectors);

/// Block-diagonal sum of root-aligned single-factor reps plus u1_count U(1)
/// generators, each a 1x1 block sqrt(C).
AlgebraRep direct_sum(const std::vector<AlgebraRep>& parts, int u1_count);

AlgebraRep build_matrix_rep(Family family, int rank, int u1_count);
AlgebraRep build_matrix_rep(Family family, int rank, int u1_count, RepKind kind);
AlgebraRep build_matrix_rep(const std::vector<CartanType>& factors, int u1_count);

/// Totally antisymmetric structure constants, [t_A, t_B] = i f_ABC t_C.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }
  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const;

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

/// f_ABC = -(i/C) Tr([t_A, t_B] t_C).
StructureConstants structure_constants(const AlgebraRep& rep);

double antisymmetry_residual(const StructureConstants& f);
/// Max over (A,B,C,D) of f_ABE f_ECD + f_BCE f_EAD + f_CAE f_EBD.
double jacobi_residual(const StructureConstants& f);
/// Max |[t_A, t_B] - i f_ABC t_C| over all pairs.
double closure_residual(const AlgebraRep& rep, const StructureConstants& f);
/// Max over roots of |[E_alpha, E_-alpha] - alpha^vee|.
double chevalley_residual(const AlgebraRep& rep);

/// Euclidean Dirac matrices for the Clifford algebra of R^7.
struct CliffordRep {
  std::vector<CMatrix> gammas;  ///< gamma_1 .. gamma_7 (stored 0-based)

  /// T_jk = i gamma_j gamma_k / 2, 1-based plane indices.
  CMatrix spin_generator(int j, int k) const;
};

CliffordRep build_clifford(int dimension = 7);

struct PeriodicityResult {
  bool period_ok = false;       ///< exp(2 pi i X) == 1
  bool min_nontrivial = false;  ///< exp(i phi X) != 1 for phi in {pi/2, pi, 3pi/2}
  double period_residual = 0.0;
  double min_sample_distance = 0.0;
};

/// Checks exp(2 pi i X) = 1 and exp(i phi X) != 1 for sampled phi. Refuses
/// reps that are not faithful for the simply connected group, since e.g. the
/// vector rep of B_n reports period pi for short coroots.
PeriodicityResult coroot_periodicity_check(const AlgebraRep& rep, const CMatrix& coroot_element,
                                           double tol = kDefaultTolerance);

}  // namespace hkt
