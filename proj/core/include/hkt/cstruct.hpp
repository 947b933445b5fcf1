#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "hkt/liealg.hpp"

namespace hkt {

enum class BlockTag { ScriptI, ScriptJ, MinusScriptJ, ScriptK, MinusScriptK, Other };

std::string to_string(BlockTag tag);

/// Orthonormal frame of the tangent space grouped into 4-dimensional blocks
/// (a basic root with its CSA pair, or a quartet of two root pairs). Columns
/// are generator-coordinate vectors.
struct BlockFrame {
  RMatrix basis;                    ///< D x (4 * blocks)
  std::vector<std::string> labels;  ///< one per block

  int block_count() const { return static_cast<int>(labels.size()); }
  /// The 4x4 matrix of x in block b together with its leakage out of the block.
  RMatrix block(const RMatrix& x, int b, double* leakage = nullptr) const;
};

struct BlockInfo {
  std::string label;
  BlockTag tag = BlockTag::Other;
};

/// Real antisymmetric matrix on the tangent space squaring to -1, in the
/// column convention  X^ t_B = sum_A t_A X_AB.
class ComplexStructure {
 public:
  ComplexStructure() = default;
  explicit ComplexStructure(RMatrix m) : matrix_(std::move(m)) {}
  ComplexStructure(RMatrix m, std::vector<BlockInfo> blocks) : matrix_(std::move(m)), blocks_(std::move(blocks)) {}

  const RMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const std::vector<BlockInfo>& blocks() const { return blocks_; }

  double operator()(int a, int b) const { return matrix_(a, b); }

  /// max |I^T + I|
  double antisymmetry_residual() const;
  /// max |I I + 1|
  double square_residual() const;

  /// Returns a copy whose blocks are tagged against the given frame.
  ComplexStructure tagged(const BlockFrame& frame) const;

 private:
  RMatrix matrix_;
  std::vector<BlockInfo> blocks_;
};

/// Pairs each basic coroot direction t_k with a leftover CSA / U(1) direction
/// e_k, both unit vectors in generator coordinates.
struct CsaPairing {
  std::vector<RVector> t;
  std::vector<RVector> e;

  std::size_t size() const { return t.size(); }
  /// Largest |<u, v>| between distinct vectors, or |<u,u> - 1|.
  double orthonormality_residual() const;
};

/// Canonical structure: I_{A* A} = 1 for every root pair, I t_k = e_k on the
/// CSA. Throws PreconditionError if the pairing does not exhaust the
/// CSA + U(1) directions.
ComplexStructure canonical_I(const AlgebraRep& rep, const CsaPairing& pairing);
/// Variant acting only on the given root pairs and pairing (zero elsewhere),
/// used for homogeneous spaces.
ComplexStructure canonical_I_on(int dim, const std::vector<std::pair<int, int>>& root_pairs,
                                const CsaPairing& pairing);

/// The 4x4 block-I, block-J, block-K matrices in the order (1, 2, 3, 0).
RMatrix thooft_I();
RMatrix thooft_J();
RMatrix thooft_K();
/// max |X_AB - 1/2 eps_ABCD X_CD| with eps_1230 = 1 (positions 0..3).
double self_duality_residual(const RMatrix& x);
BlockTag classify_block(const RMatrix& block4, double tol = 1e-9);

/// max over A,B,C of f_ABC - g_ABC - g_BCA - g_CAB with g_ABC = I_AD I_BE f_DEC.
double integrability_residual(const RMatrix& i, const StructureConstants& f);
inline double integrability_residual(const ComplexStructure& i, const StructureConstants& f) {
  return integrability_residual(i.matrix(), f);
}

/// Quaternion algebra X_p X_q = -delta_pq + eps_pqs X_s over the triple.
double quaternion_residual(const RMatrix& i, const RMatrix& j, const RMatrix& k);
inline double quaternion_residual(const ComplexStructure& i, const ComplexStructure& j,
                                  const ComplexStructure& k) {
  return quaternion_residual(i.matrix(), j.matrix(), k.matrix());
}

/// d_P I_MN at the origin, from the first-order coordinate field, stored as
/// out(P, M, N).
StructureConstants complex_structure_derivative(const RMatrix& i, const StructureConstants& f);

/// max |d_P I_MN - 1/2 f_QPM I_QN - 1/2 f_QPN I_MQ|.
double bismut_residual(const RMatrix& i, const StructureConstants& f);

/// g_MN = delta_MN - (1/12) f_MPQ f_NPR x^Q x^R.
RMatrix metric_at(const StructureConstants& f, const RVector& x);
/// e_MA = delta_MA + 1/2 f_MAP x^P + 1/6 f_MNR f_NAQ x^R x^Q, so that e e^T = g
/// up to o(x^2).
RMatrix vielbein_at(const StructureConstants& f, const RVector& x);
RMatrix metric_at(const AlgebraRep& rep, const RVector& x);
RMatrix vielbein_at(const AlgebraRep& rep, const RVector& x);

/// Torsion C_MNP = I_MQ I_NS I_PR (d_Q I_SR + d_S I_RQ + d_R I_QS) at the
/// origin. Throws PreconditionError (with the residual) unless I is integrable
/// within tol.
StructureConstants torsion_via_hull(const RMatrix& i, const StructureConstants& f, double tol = kDefaultTolerance);
/// max |C_MNP - f_MNP|.
double torsion_match_residual(const StructureConstants& c, const StructureConstants& f);

struct NijenhuisResult {
  double residual = 0.0;
  /// Difference between the Richardson estimate and the plain central
  /// difference at h/2; large values mean the step is badly chosen.
  double richardson_gap = 0.0;
  bool step_warning = false;
  std::string warning;
};

/// Nijenhuis tensor of the field I(x) = e(x) I e(x)^{-1} at the origin, with
/// derivatives from central differences at h and h/2 combined by Richardson
/// extrapolation.
NijenhuisResult nijenhuis_at_origin(const RMatrix& i, const StructureConstants& f, double h = 1e-4);
inline NijenhuisResult nijenhuis_at_origin(const AlgebraRep& rep, const ComplexStructure& i, double h = 1e-4) {
  return nijenhuis_at_origin(i.matrix(), structure_constants(rep), h);
}

struct GeometryResidualReport {
  double integrability = 0.0;
  double square = 0.0;
  double bismut = 0.0;
  double torsion_match = 0.0;
  double nijenhuis = 0.0;
  /// Finite-difference step warning from the Nijenhuis estimate, empty if none.
  std::string warning;

  double max() const;
};

/// All residuals of one structure. The torsion residual is |C - f| with the
/// Hull formula evaluated even when I is not integrable.
GeometryResidualReport geometry_residuals(const RMatrix& i, const StructureConstants& f, double tol,
                                          double fd_step);

/// Random orthogonal conjugate of the standard structure: antisymmetric,
/// squares to -1, unit-normalized columns.
RMatrix random_complex_structure(int dim, std::mt19937_64& rng);

/// Tensor transform out_abc = sum W_Aa W_Bb W_Cc f_ABC for columns of w.
StructureConstants restrict_structure_constants(const StructureConstants& f, const RMatrix& w);

}  // namespace hkt
