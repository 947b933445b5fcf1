#pragma once

#include <string>
#include <vector>

#include "hkt/autom.hpp"
#include "hkt/cstruct.hpp"
#include "hkt/liealg.hpp"
#include "hkt/rootsys.hpp"

namespace hkt {

/// Group name of the simply connected compact form: SU(n+1), Spin(2n+1), Sp(n), Spin(2n).
std::string group_name(const CartanType& type);
/// Conventional matrix-group name used in classification lists: SU, SO, Sp.
std::string classical_name(const CartanType& type);

enum class QuotientKind { Summand, Abelian };

/// One piece of the quotient subalgebra. A summand is addressed by its Cartan
/// type and the label of its highest root in the simple roots of the owning
/// factor; an Abelian piece by the centralizer level it comes from (0 means
/// the level of the factor's summand items, or 1 if there are none).
struct QuotientItem {
  QuotientKind kind = QuotientKind::Summand;
  int factor = 0;
  CartanType type;
  std::string root_label;
  int level = 1;

  friend bool operator==(const QuotientItem&, const QuotientItem&) = default;
};

struct SpaceSpec {
  std::vector<CartanType> factors;
  int u1_count = 0;
  std::vector<QuotientItem> quotient;

  bool is_group() const { return quotient.empty(); }
  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// p = 2 n_b - r summed over the simple factors.
int required_padding(const std::vector<CartanType>& factors);
int required_padding(const CartanType& factor);

/// Maximum rank accepted by classify_family and the catalog.
int max_supported_rank(Family family);

struct ClassificationRow {
  CartanType type;
  int padding = 0;
  std::string group;     ///< e.g. "Spin(7)"
  std::string classical; ///< e.g. "SO(7)"
  std::string hkt_name;  ///< e.g. "Spin(7) x U(1)^3"
};

/// Rows for every rank of the family from its smallest valid rank up to
/// max_rank. Throws UnsupportedFamilyRank beyond max_supported_rank.
std::vector<ClassificationRow> classify_family(Family family, int max_rank);

/// Quotient data resolved against the basic-root chain of the parent.
struct ResolvedSpace {
  AlgebraRep rep;
  BasicRootChain chain;
  std::vector<BasicRoot> retained;  ///< basic roots whose blocks stay in the tangent space
  RMatrix h_basis;                  ///< orthonormal basis of the quotient subalgebra
  int dimension = 0;
  int padding_required = 0;
};

/// Builds the padded parent and resolves every quotient item. Throws
/// PreconditionError for items that do not name a centralizer summand.
ResolvedSpace resolve_space(const SpaceSpec& spec, double tol = kDefaultTolerance);

/// Padding that makes the remaining CSA directions plus U(1)s equal twice the
/// remaining basic roots. Can be negative when no padding works.
int required_padding(const SpaceSpec& spec);
int tangent_dimension(const SpaceSpec& spec);

/// Level-0 padded group followed by, for every level 1..max_level, each
/// nonempty product of centralizer summands at that level with and without
/// the Abelian part, re-padded. Specs that need negative padding are skipped.
std::vector<SpaceSpec> enumerate_quotients(const CartanType& factor, int max_level);

/// e.g. "SU(4)/(SU(2) x U(1)) x U(1)".
std::string space_name(const SpaceSpec& spec);

enum class Verdict { Certified, Failed, NotAdmissible };
std::string to_string(Verdict v);

struct StructureReport {
  std::string name;  ///< "I", "J", "K"
  GeometryResidualReport residuals;
  /// max |X - P X P| with P the projector on the tangent space.
  double leakage = 0.0;
  std::vector<BlockInfo> blocks;
};

struct VerifyOptions {
  double tol = kDefaultTolerance;
  double fd_step = 1e-4;
  bool jacobi = true;
};

struct VerificationReport {
  SpaceSpec spec;
  std::string name;
  int dimension = 0;
  int padding_required = 0;
  std::vector<std::string> basic_roots_used;
  std::vector<std::string> automorphisms;  ///< e.g. "J:alpha+beta"
  std::vector<StructureReport> structures;
  double quaternion = 0.0;
  double anticommutator = 0.0;
  double automorphism_orthogonality = 0.0;
  double automorphism_invariance = 0.0;
  double jacobi = 0.0;
  double coset_closure_residual = 0.0;
  double tolerance = kDefaultTolerance;
  Verdict verdict = Verdict::Failed;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  std::string message;

  /// Largest asserted residual.
  double max_residual() const;
};

/// Full pipeline for a group manifold or a coset. Inadmissible paddings come
/// back with verdict NotAdmissible; quotient items that do not resolve throw
/// PreconditionError.
VerificationReport verify(const SpaceSpec& spec, const VerifyOptions& options = {});

/// The coset path on its own; requires a non-empty quotient.
VerificationReport build_coset_triple(const SpaceSpec& spec, const VerifyOptions& options = {});

}  // namespace hkt
