#pragma once

#include <string>
#include <vector>

#include "hkt/cstruct.hpp"
#include "hkt/liealg.hpp"
#include "hkt/rootsys.hpp"

namespace hkt {

enum class AutomorphismKind { JKind, KKind };

std::string to_string(AutomorphismKind kind);

/// Inner automorphism t_B -> U^dagger t_B U written as an orthogonal matrix in
/// the column convention: U^dagger t_B U = sum_A t_A Omega_AB.
struct Automorphism {
  RMatrix matrix;
  CMatrix unitary;
  int factor = 0;
  Coords root;
  AutomorphismKind kind = AutomorphismKind::JKind;
  int level = 0;

  double orthogonality_residual() const;
};

/// J-kind: U = exp(i pi/4 (E_theta + E_-theta)); K-kind: U = exp(pi/4 (E_theta - E_-theta)).
Automorphism automorphism_from_root(const AlgebraRep& rep, int factor, const Coords& theta,
                                    AutomorphismKind kind, double tol = kDefaultTolerance);

/// max |Omega_AD Omega_BE Omega_CF f_DEF - f_ABC|.
double invariance_residual(const RMatrix& omega, const StructureConstants& f);

struct RootRef {
  int factor = 0;
  Coords root;
};

struct CentralizerSummand {
  int factor = 0;
  RootSystem system;
};

/// Subalgebra of generators commuting with E_{+-theta} for every given theta.
struct Centralizer {
  RMatrix basis;  ///< orthonormal columns in generator coordinates
  std::vector<CentralizerSummand> summands;
  RMatrix abelian_basis;  ///< CSA + U(1) directions outside the summands

  int dimension() const { return static_cast<int>(basis.cols()); }
  int abelian_dim() const { return static_cast<int>(abelian_basis.cols()); }
};

/// Numerical centralizer, decomposed into simple summands by root
/// connectivity. For a single highest root the summands of that factor are
/// compared against extended_dynkin_surgery and a ConstructionError is raised
/// on disagreement.
Centralizer centralizer(const AlgebraRep& rep, const std::vector<RootRef>& thetas, double tol = kDefaultTolerance);

struct BasicRoot {
  int factor = 0;
  int level = 0;
  Coords root;
  /// The simple summand whose highest root this is.
  RootSystem summand;
  /// Label in the simple roots of the owning factor, e.g. "alpha+2beta+2gamma".
  std::string label;
  /// Index of the parent basic root within the previous level, -1 at level 0.
  int parent = -1;
};

/// Nested highest roots of successive centralizers ("Russian doll").
struct BasicRootChain {
  std::vector<std::vector<BasicRoot>> levels;

  std::size_t size() const;
  /// All basic roots, outer level first.
  std::vector<BasicRoot> flat() const;
};

/// Builds the chain for every simple factor of rep (level order, factors in
/// order, summands in simple-root order within a level) and cross-checks each
/// level against the numerical centralizer of the previous ones.
BasicRootChain basic_roots(const AlgebraRep& rep, double tol = kDefaultTolerance);

/// Unit coroot directions t_k for the given basic roots, paired with leftover
/// CSA / U(1) directions e_k obtained by Gram-Schmidt in generator-index
/// order, orthogonal to all t_k and to the columns of `excluded`. Throws
/// PreconditionError when the leftover count differs from the number of roots.
CsaPairing build_pairing(const AlgebraRep& rep, const std::vector<BasicRoot>& roots,
                         const RMatrix& excluded = RMatrix());

/// Blocks (E_theta pair, t_k, e_k) for every basic root followed by the
/// quartets (alpha, theta - alpha) with <alpha, theta^vee> = 1 inside its
/// summand.
BlockFrame build_block_frame(const AlgebraRep& rep, const std::vector<BasicRoot>& roots, const CsaPairing& pairing);

struct QuaternionTriple {
  ComplexStructure I, J, K;
  /// Third structure from the K-kind chain, kept for comparison with K = I J.
  ComplexStructure K_prime;
  std::vector<Automorphism> j_chain, k_chain;
  BlockFrame frame;
  double k_prime_difference = 0.0;
  /// Per block: +1 if K' = K there, -1 if K' = -K, 0 otherwise.
  std::vector<int> k_prime_block_signs;
  double anticommutator = 0.0;  ///< max |I J + J I|
  double orthogonality = 0.0;   ///< worst automorphism orthogonality residual
  double invariance = 0.0;      ///< worst automorphism f-invariance residual
};

/// J = Omega I Omega^T with Omega the product of J-kind automorphisms over
/// `roots` (first root applied first), K = I J, and K' from the K-kind chain.
QuaternionTriple assemble_triple(const AlgebraRep& rep, const StructureConstants& f, const RMatrix& i,
                                 const std::vector<BasicRoot>& roots, const BlockFrame& frame,
                                 double tol = kDefaultTolerance);

/// Group-manifold triple from the canonical I.
QuaternionTriple build_quaternion_triple(const AlgebraRep& rep, const BasicRootChain& chain,
                                         const CsaPairing& pairing, double tol = kDefaultTolerance);

}  // namespace hkt
