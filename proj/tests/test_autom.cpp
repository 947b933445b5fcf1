#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "hkt/autom.hpp"
#include "hkt/error.hpp"
#include "oracles.hpp"

using namespace hkt;

namespace {

struct Built {
  AlgebraRep rep;
  StructureConstants f;
  BasicRootChain chain;
  CsaPairing pairing;
  QuaternionTriple triple;
};

Built build(Family fam, int rank, int u1) {
  Built b{build_matrix_rep(fam, rank, u1), {}, {}, {}, {}};
  b.f = structure_constants(b.rep);
  b.chain = basic_roots(b.rep);
  b.pairing = build_pairing(b.rep, b.chain.flat());
  b.triple = build_quaternion_triple(b.rep, b.chain, b.pairing);
  return b;
}

std::vector<std::string> labels(const BasicRootChain& c) {
  std::vector<std::string> out;
  for (const auto& b : c.flat()) out.push_back(b.label);
  return out;
}

}  // namespace

TEST(Automorphism, Su3UnitaryMatchesClosedForm) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto& rs = rep.factor(0).roots;
  const auto a = automorphism_from_root(rep, 0, rs.highest_root().coords, AutomorphismKind::JKind);
  CMatrix u(3, 3);
  const Complex i(0, 1);
  u << 1, 0, i, 0, std::sqrt(2.0), 0, i, 0, 1;
  u /= std::sqrt(2.0);
  EXPECT_LT(max_abs(a.unitary - u), 1e-13);
}

TEST(Automorphism, Su3RootVectorImagesMatchHadamardSeries) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto& rs = rep.factor(0).roots;
  const Coords alpha = rs.simple_roots()[0].coords, beta = rs.simple_roots()[1].coords;
  const auto a = automorphism_from_root(rep, 0, rs.highest_root().coords, AutomorphismKind::JKind);
  const CMatrix et = rep.root_vector(0, rs.highest_root().coords);
  const CMatrix r = Complex(0, -std::acos(-1.0) / 4) * (et + et.adjoint());
  const CMatrix ea = rep.root_vector(0, alpha), eb = rep.root_vector(0, beta);
  const Complex i(0, 1);
  const double s = 1 / std::sqrt(2.0);
  // Omega: X -> U^dagger X U = e^R X e^{-R}.
  EXPECT_LT(max_abs(oracle::hadamard_series(r, ea) - a.unitary.adjoint() * ea * a.unitary), 1e-13);
  EXPECT_LT(max_abs(a.unitary.adjoint() * ea * a.unitary - s * (ea - i * eb.adjoint())), 1e-13);
  EXPECT_LT(max_abs(a.unitary.adjoint() * eb * a.unitary - s * (eb + i * ea.adjoint())), 1e-13);
  EXPECT_LT(max_abs(a.unitary.adjoint() * ea.adjoint() * a.unitary - s * (ea.adjoint() + i * eb)), 1e-13);
  EXPECT_LT(max_abs(a.unitary.adjoint() * eb.adjoint() * a.unitary - s * (eb.adjoint() - i * ea)), 1e-13);
}

TEST(Automorphism, MatrixActsAsConjugation) {
  const auto rep = build_matrix_rep(Family::C, 2, 2);
  const auto& rs = rep.factor(0).roots;
  for (auto kind : {AutomorphismKind::JKind, AutomorphismKind::KKind}) {
    const auto a = automorphism_from_root(rep, 0, rs.highest_root().coords, kind);
    for (int b = 0; b < rep.dimension(); ++b) {
      const CMatrix lhs = a.unitary.adjoint() * rep.generator(b) * a.unitary;
      CMatrix rhs = CMatrix::Zero(rep.matrix_dim(), rep.matrix_dim());
      for (int c = 0; c < rep.dimension(); ++c) rhs += a.matrix(c, b) * rep.generator(c);
      EXPECT_LT(max_abs(lhs - rhs), 1e-13);
    }
  }
}

TEST(Automorphism, OrthogonalAndInvariantOnCatalog) {
  for (auto [fam, rank, u1] : {std::tuple{Family::A, 2, 0}, std::tuple{Family::A, 5, 1}, std::tuple{Family::B, 3, 3},
                               std::tuple{Family::B, 4, 4}, std::tuple{Family::C, 3, 3}, std::tuple{Family::D, 4, 4},
                               std::tuple{Family::D, 5, 3}}) {
    const auto rep = build_matrix_rep(fam, rank, u1);
    const auto f = structure_constants(rep);
    for (const auto& b : basic_roots(rep).flat())
      for (auto kind : {AutomorphismKind::JKind, AutomorphismKind::KKind}) {
        const auto a = automorphism_from_root(rep, b.factor, b.root, kind);
        EXPECT_LT(a.orthogonality_residual(), 1e-9) << rep.name() << " " << b.label;
        EXPECT_LT(invariance_residual(a.matrix, f), 1e-9) << rep.name() << " " << b.label;
      }
  }
}

TEST(Automorphism, InvarianceDetectsNonAutomorphisms) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto f = structure_constants(rep);
  std::mt19937_64 rng(41);
  RMatrix g(8, 8);
  std::normal_distribution<double> n;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) g(a, b) = n(rng);
  const RMatrix q = Eigen::HouseholderQR<RMatrix>(g).householderQ();
  EXPECT_GT(invariance_residual(q, f), 1e-2);
}

TEST(Centralizer, HighestRootCentralizers) {
  {
    const auto rep = build_matrix_rep(Family::A, 5, 1);
    const auto c = centralizer(rep, {{0, rep.factor(0).roots.highest_root().coords}});
    ASSERT_EQ(c.summands.size(), 1u);
    EXPECT_EQ(c.summands[0].system.name(), "A3");
    EXPECT_EQ(c.abelian_dim(), 2);  // one CSA direction plus the U(1)
    EXPECT_EQ(c.dimension(), 15 + 2);
  }
  {
    const auto rep = build_matrix_rep(Family::B, 3, 0);
    const auto c = centralizer(rep, {{0, rep.factor(0).roots.highest_root().coords}});
    ASSERT_EQ(c.summands.size(), 2u);
    EXPECT_EQ(c.dimension(), 6);
    EXPECT_EQ(rep.factor(0).roots.label(c.summands[0].system.highest_root().coords), "alpha");
    EXPECT_EQ(rep.factor(0).roots.label(c.summands[1].system.highest_root().coords), "gamma");
  }
  {
    const auto rep = build_matrix_rep(Family::D, 4, 0);
    const auto c = centralizer(rep, {{0, rep.factor(0).roots.highest_root().coords}});
    EXPECT_EQ(c.summands.size(), 3u);
    EXPECT_EQ(c.dimension(), 9);
  }
}

TEST(Centralizer, BasisCommutesWithRootVectors) {
  const auto rep = build_matrix_rep(Family::C, 3, 0);
  const Coords theta = rep.factor(0).roots.highest_root().coords;
  const auto c = centralizer(rep, {{0, theta}});
  const CMatrix e = rep.root_vector(0, theta);
  for (Eigen::Index k = 0; k < c.basis.cols(); ++k) {
    const CMatrix x = rep.from_coordinates(RVector(c.basis.col(k)));
    EXPECT_LT(max_abs(commutator(x, e)), 1e-10);
  }
}

TEST(BasicRoots, ChainsOfReferenceAlgebras) {
  EXPECT_EQ(labels(basic_roots(build_matrix_rep(Family::B, 3, 3))),
            (std::vector<std::string>{"alpha+2beta+2gamma", "alpha", "gamma"}));
  EXPECT_EQ(labels(basic_roots(build_matrix_rep(Family::A, 3, 1))), (std::vector<std::string>{"alpha+beta+gamma", "beta"}));
  EXPECT_EQ(basic_roots(build_matrix_rep(Family::D, 4, 4)).size(), 4u);
  const auto a6 = basic_roots(build_matrix_rep(Family::A, 6, 0));
  ASSERT_EQ(a6.levels.size(), 3u);
  EXPECT_EQ(a6.levels[1][0].summand.name(), "A4");
  EXPECT_EQ(a6.levels[2][0].summand.name(), "A2");
  EXPECT_EQ(a6.levels[2][0].parent, 0);
}

TEST(BasicRoots, MutuallyOrthogonal) {
  for (auto [fam, rank] : {std::pair{Family::A, 7}, std::pair{Family::B, 4}, std::pair{Family::C, 4}, std::pair{Family::D, 5}}) {
    const auto flat = basic_roots(build_matrix_rep(fam, rank, 0)).flat();
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i + 1; j < flat.size(); ++j) EXPECT_EQ(dot(flat[i].root, flat[j].root), 0);
  }
}

TEST(Pairing, RequiresTheRightPadding) {
  const auto rep = build_matrix_rep(Family::A, 3, 0);
  try {
    build_pairing(rep, basic_roots(rep).flat());
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("add 1 U(1) factor"), std::string::npos) << e.what();
  }
  const auto ok = build_matrix_rep(Family::A, 3, 1);
  const auto p = build_pairing(ok, basic_roots(ok).flat());
  EXPECT_EQ(p.size(), 2u);
  EXPECT_LT(p.orthonormality_residual(), 1e-12);
}

TEST(Frame, OrthonormalAndComplete) {
  for (auto [fam, rank, u1] : {std::tuple{Family::A, 4, 0}, std::tuple{Family::B, 3, 3}, std::tuple{Family::D, 5, 3}}) {
    const auto b = build(fam, rank, u1);
    const RMatrix& w = b.triple.frame.basis;
    EXPECT_EQ(w.cols(), b.rep.dimension());
    EXPECT_LT(max_abs(w.transpose() * w - RMatrix::Identity(w.cols(), w.cols())), 1e-12);
  }
}

TEST(Triple, Su2U1ReproducesThooftBlocks) {
  const auto b = build(Family::A, 1, 1);
  EXPECT_LT(max_abs(b.triple.I.matrix() - thooft_I()), 1e-12);
  EXPECT_LT(max_abs(b.triple.J.matrix() - thooft_J()), 1e-12);
  EXPECT_LT(max_abs(b.triple.K.matrix() - thooft_K()), 1e-12);
}

TEST(Triple, Su3JActsAsInWorkedExample) {
  const auto b = build(Family::A, 2, 0);
  const auto t = oracle::su3_example_basis();
  const RMatrix& j = b.triple.J.matrix();
  EXPECT_LT(max_abs(oracle::apply(b.rep, j, t[1]) + t[6]), 1e-10);
  EXPECT_LT(max_abs(oracle::apply(b.rep, j, t[2]) - t[7]), 1e-10);
  EXPECT_LT(max_abs(oracle::apply(b.rep, j, t[6]) - t[1]), 1e-10);
  EXPECT_LT(max_abs(oracle::apply(b.rep, j, t[7]) + t[2]), 1e-10);
  // The (4,5,3,8) block is block-J; the (1,2,6,7) block is its negative.
  ASSERT_EQ(b.triple.J.blocks().size(), 2u);
  EXPECT_EQ(b.triple.J.blocks()[0].tag, BlockTag::ScriptJ);
  EXPECT_EQ(b.triple.J.blocks()[1].tag, BlockTag::MinusScriptJ);
  EXPECT_EQ(b.triple.K.blocks()[1].tag, BlockTag::MinusScriptK);
}

TEST(Triple, QuaternionAndIntegrableAcrossFamilies) {
  for (auto [fam, rank, u1] : {std::tuple{Family::A, 3, 1}, std::tuple{Family::A, 4, 0}, std::tuple{Family::B, 3, 3},
                               std::tuple{Family::C, 3, 3}, std::tuple{Family::D, 4, 4}, std::tuple{Family::D, 5, 3}}) {
    const auto b = build(fam, rank, u1);
    EXPECT_LT(quaternion_residual(b.triple.I, b.triple.J, b.triple.K), 1e-9) << b.rep.name();
    EXPECT_LT(b.triple.anticommutator, 1e-9);
    for (const auto* x : {&b.triple.I, &b.triple.J, &b.triple.K})
      EXPECT_LT(integrability_residual(*x, b.f), 1e-9) << b.rep.name();
    // Every block of every structure is a 't Hooft block up to sign.
    for (const auto* x : {&b.triple.I, &b.triple.J, &b.triple.K})
      for (const auto& blk : x->blocks()) EXPECT_NE(blk.tag, BlockTag::Other) << b.rep.name() << " " << blk.label;
  }
}

TEST(Triple, KPrimeAgreesWithKUpToBlockSigns) {
  const auto b = build(Family::B, 3, 3);
  for (int s : b.triple.k_prime_block_signs) EXPECT_NE(s, 0);
  EXPECT_LT(integrability_residual(b.triple.K_prime, b.f), 1e-9);
}

TEST(Triple, WithinLevelOrderIsInert) {
  // Spin(8): three commuting su(2) summands at level 1.
  const auto b = build(Family::D, 4, 4);
  auto roots = b.chain.flat();
  ASSERT_EQ(roots.size(), 4u);
  const RMatrix i = b.triple.I.matrix();
  std::vector<BasicRoot> tail(roots.begin() + 1, roots.end());
  std::sort(tail.begin(), tail.end(), [](const BasicRoot& x, const BasicRoot& y) { return x.label < y.label; });
  do {
    std::vector<BasicRoot> order = {roots.front()};
    order.insert(order.end(), tail.begin(), tail.end());
    const auto t = assemble_triple(b.rep, b.f, i, order, b.triple.frame);
    EXPECT_LT(max_abs(t.J.matrix() - b.triple.J.matrix()), 1e-12);
    EXPECT_LT(max_abs(t.K.matrix() - b.triple.K.matrix()), 1e-12);
  } while (std::next_permutation(tail.begin(), tail.end(),
                                 [](const BasicRoot& x, const BasicRoot& y) { return x.label < y.label; }));
}
