#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hkt/error.hpp"
#include "hkt/liealg.hpp"
#include "oracles.hpp"

using namespace hkt;

namespace {

struct Case {
  Family family;
  int rank;
  int u1;
};

// Every algebra that appears in the catalog, padded as it is there.
const std::vector<Case> kCatalog = {
    {Family::A, 1, 1}, {Family::A, 2, 0}, {Family::A, 3, 1}, {Family::A, 4, 0}, {Family::A, 5, 1},
    {Family::A, 6, 0}, {Family::A, 7, 1}, {Family::B, 2, 2}, {Family::B, 3, 3}, {Family::B, 4, 4},
    {Family::C, 1, 1}, {Family::C, 2, 2}, {Family::C, 3, 3}, {Family::C, 4, 4}, {Family::D, 3, 1},
    {Family::D, 4, 4}, {Family::D, 5, 3},
};

}  // namespace

TEST(AlgebraRep, GeneratorsAreOrthonormalAndHermitian) {
  for (const auto& c : kCatalog) {
    const auto rep = build_matrix_rep(c.family, c.rank, c.u1);
    EXPECT_LT(rep.orthonormality_residual(), 1e-12) << rep.name();
    for (const auto& t : rep.generators()) EXPECT_LT(max_abs(t - t.adjoint()), 1e-14);
    EXPECT_EQ(rep.dimension(), (CartanType{c.family, c.rank}.dimension() + c.u1));
    EXPECT_EQ(rep.u1_count(), c.u1);
  }
}

TEST(AlgebraRep, Su2WithU1HasPauliTriple) {
  const auto rep = build_matrix_rep(Family::A, 1, 1);
  ASSERT_EQ(rep.dimension(), 4);
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  EXPECT_LT(max_abs(rep.generator(0).topLeftCorner(2, 2) - s1 / 2.0), 1e-14);
  EXPECT_LT(max_abs(rep.generator(1).topLeftCorner(2, 2) - s2 / 2.0), 1e-14);
  EXPECT_LT(max_abs(rep.generator(2).topLeftCorner(2, 2) - s3 / 2.0), 1e-14);
  EXPECT_EQ(rep.u1_indices(), std::vector<int>{3});
}

TEST(StructureConstants, Su2IsLeviCivita) {
  const auto rep = build_matrix_rep(Family::A, 1, 0);
  const auto f = structure_constants(rep);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(f(a, b, c), oracle::epsilon3(a, b, c), 1e-14);
}

TEST(StructureConstants, U1IndicesDecouple) {
  const auto rep = build_matrix_rep(Family::B, 3, 3);
  const auto f = structure_constants(rep);
  for (int u : rep.u1_indices())
    for (int a = 0; a < f.dim(); ++a)
      for (int b = 0; b < f.dim(); ++b) {
        EXPECT_EQ(f(u, a, b), 0.0);
        EXPECT_EQ(f(a, u, b), 0.0);
        EXPECT_EQ(f(a, b, u), 0.0);
      }
}

TEST(StructureConstants, JacobiAntisymmetryClosureOnCatalog) {
  for (const auto& c : kCatalog) {
    const auto rep = build_matrix_rep(c.family, c.rank, c.u1);
    const auto f = structure_constants(rep);
    EXPECT_LT(antisymmetry_residual(f), 1e-12) << rep.name();
    EXPECT_LT(jacobi_residual(f), 1e-9) << rep.name();
    EXPECT_LT(closure_residual(rep, f), 1e-12) << rep.name();
  }
}

TEST(StructureConstants, JacobiResidualDetectsCorruption) {
  auto f = structure_constants(build_matrix_rep(Family::A, 2, 0));
  f(0, 2, 4) += 0.1;
  f(2, 0, 4) -= 0.1;
  EXPECT_GT(jacobi_residual(f), 1e-3);
}

TEST(StructureConstants, UnitaryRootSectorIsHalfInteger) {
  for (int n : {2, 3, 4}) {
    const auto rep = build_matrix_rep(Family::A, n, 0);
    const auto f = structure_constants(rep);
    std::vector<int> root_idx;
    for (const auto& e : rep.root_vector_table()) {
      root_idx.push_back(e.re);
      root_idx.push_back(e.im);
    }
    for (int a : root_idx)
      for (int b : root_idx)
        for (int c : root_idx) EXPECT_NEAR(2 * f(a, b, c), std::round(2 * f(a, b, c)), 1e-12);
  }
}

TEST(Chevalley, Su3RootVectorsAreElementaryMatrices) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto& rs = rep.factor(0).roots;
  EXPECT_LT(max_abs(rep.root_vector(0, rs.simple_roots()[0].coords) - oracle::elementary(3, 0, 1)), 1e-12);
  EXPECT_LT(max_abs(rep.root_vector(0, rs.simple_roots()[1].coords) - oracle::elementary(3, 1, 2)), 1e-12);
  EXPECT_LT(max_abs(rep.root_vector(0, rs.highest_root().coords) - oracle::elementary(3, 0, 2)), 1e-12);
}

TEST(Chevalley, CorootNormalizationAndEigenvalues) {
  for (const auto& c : kCatalog) {
    const auto rep = build_matrix_rep(c.family, c.rank, c.u1);
    EXPECT_LT(chevalley_residual(rep), 1e-9) << rep.name();
    const auto& rs = rep.factor(0).roots;
    for (const auto& s : rs.simple_roots())
      for (const auto& r : rs.positive_roots()) {
        const CMatrix e = rep.root_vector(0, r.coords);
        const CMatrix h = rep.coroot_matrix(0, s.coords);
        const double eig = 2.0 * dot(r.coords, s.coords) / dot(s.coords, s.coords);
        EXPECT_LT(max_abs(commutator(h, e) - eig * e), 1e-10);
      }
  }
}

TEST(Chevalley, Spin7VectorGammaRootVector) {
  const auto rep = build_matrix_rep(Family::B, 3, 0);
  const auto& rs = rep.factor(0).roots;
  const Coords gamma = rs.simple_roots()[2].coords;
  const CMatrix e = rep.root_vector(0, gamma);
  auto t = [](int a, int b) {
    CMatrix m = CMatrix::Zero(7, 7);
    m(a - 1, b - 1) = Complex(0, 1);
    m(b - 1, a - 1) = Complex(0, -1);
    return m;
  };
  const CMatrix target = t(5, 7) - Complex(0, 1) * t(6, 7);
  // E_gamma is proportional to T_57 - i T_67 and [E_gamma, E_-gamma] = 2 T_56.
  const Complex ratio = (e.array() * target.conjugate().array()).sum() / target.squaredNorm();
  EXPECT_LT(max_abs(e - ratio * target), 1e-12);
  EXPECT_LT(max_abs(commutator(e, e.adjoint()) - 2.0 * t(5, 6)), 1e-12);
}

TEST(Chevalley, BourbakiNormsForAllRootPairs) {
  for (auto [fam, rank] : {std::pair{Family::A, 2}, std::pair{Family::A, 3}, std::pair{Family::B, 3}}) {
    const auto rep = build_matrix_rep(fam, rank, 0);
    const auto& rs = rep.factor(0).roots;
    std::vector<Coords> all;
    for (const auto& r : rs.positive_roots()) {
      all.push_back(r.coords);
      all.push_back(-r.coords);
    }
    int checked = 0;
    for (const auto& a : all)
      for (const auto& b : all) {
        if (!rs.is_root(a + b)) continue;
        const CMatrix lhs = commutator(rep.root_vector(0, a), rep.root_vector(0, b));
        const CMatrix eab = rep.root_vector(0, a + b);
        const Complex coeff = (eab.adjoint() * lhs).trace() / (eab.adjoint() * eab).trace();
        EXPECT_LT(max_abs(lhs - coeff * eab), 1e-10);
        EXPECT_NEAR(std::abs(coeff.imag()), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(coeff.real()), oracle::count_q(rs, a, b) + 1, 1e-10);
        ++checked;
      }
    EXPECT_GT(checked, 0);
  }
}

TEST(Relations, Su3StarRelationsForNonProjectingCouples) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto f = structure_constants(rep);
  const auto& rs = rep.factor(0).roots;
  const auto& pos = rs.positive_roots();
  int couples = 0;
  for (std::size_t x = 0; x < pos.size(); ++x)
    for (std::size_t y = 0; y < pos.size(); ++y)
      for (std::size_t z = 0; z < pos.size(); ++z) {
        if (x == y || y == z || x == z) continue;
        const CMatrix ea = rep.root_vector(0, pos[x].coords), eb = rep.root_vector(0, pos[y].coords),
                      ec = rep.root_vector(0, pos[z].coords);
        const CMatrix comm = commutator(ea, eb);
        if (std::abs((comm * ec.adjoint()).trace()) > 1e-12 || std::abs((comm * ec).trace()) > 1e-12) continue;
        ++couples;
        const auto &a = rep.root_entry(0, x), &b = rep.root_entry(0, y), &c = rep.root_entry(0, z);
        const int A = a.re, As = a.im, B = b.re, Bs = b.im, C = c.re, Cs = c.im;
        EXPECT_NEAR(f(A, B, Cs) - f(As, Bs, Cs), 0.0, 1e-10);
        EXPECT_NEAR(f(As, B, C) + f(A, Bs, C), 0.0, 1e-10);
        EXPECT_NEAR(f(A, B, C), 0.0, 1e-10);
        EXPECT_NEAR(f(A, Bs, Cs), 0.0, 1e-10);
        EXPECT_NEAR(f(A, B, Cs) + f(Bs, As, Cs) - f(C, Bs, A) - f(As, C, B), 0.0, 1e-10);
      }
  // (alpha, alpha+beta) and (beta, alpha+beta) in both orders, each against the third root.
  EXPECT_EQ(couples, 4);
}

TEST(Periodicity, CorootsHavePeriodTwoPi) {
  const auto su2 = build_matrix_rep(Family::A, 1, 0);
  const auto su3 = build_matrix_rep(Family::A, 2, 0);
  for (const auto* rep : {&su2, &su3}) {
    const auto& rs = rep->factor(0).roots;
    for (const auto& r : rs.positive_roots()) {
      const auto res = coroot_periodicity_check(*rep, rep->coroot_matrix(0, r.coords));
      EXPECT_TRUE(res.period_ok) << rep->name() << " " << rs.label(r.coords);
      EXPECT_TRUE(res.min_nontrivial) << rep->name() << " " << rs.label(r.coords);
    }
  }
  // exp(i pi alpha^vee) = -1 for su(2), checked against Eigen's exponential.
  const CMatrix h = su2.coroot_matrix(0, su2.factor(0).roots.highest_root().coords);
  EXPECT_LT(max_abs(oracle::eigen_expm(Complex(0, std::acos(-1.0)) * h) + CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Periodicity, Spin7SpinorRepIsFaithful) {
  const auto rep = build_matrix_rep(Family::B, 3, 0, RepKind::Spinor);
  EXPECT_EQ(rep.matrix_dim(), 8);
  EXPECT_TRUE(rep.faithful_for_simply_connected());
  const auto& rs = rep.factor(0).roots;
  for (const auto& r : rs.positive_roots()) {
    const auto res = coroot_periodicity_check(rep, rep.coroot_matrix(0, r.coords));
    EXPECT_TRUE(res.period_ok && res.min_nontrivial) << rs.label(r.coords);
  }
  const CMatrix gv = rep.coroot_matrix(0, rs.simple_roots()[2].coords);
  EXPECT_LT(max_abs(oracle::eigen_expm(Complex(0, 2 * std::acos(-1.0)) * gv) - CMatrix::Identity(8, 8)), 1e-12);
  EXPECT_GT(max_abs(oracle::eigen_expm(Complex(0, std::acos(-1.0)) * gv) - CMatrix::Identity(8, 8)), 0.5);
}

TEST(Periodicity, VectorRepIsRefused) {
  const auto rep = build_matrix_rep(Family::B, 3, 0);
  EXPECT_FALSE(rep.faithful_for_simply_connected());
  EXPECT_THROW(coroot_periodicity_check(rep, rep.coroot_matrix(0, {0, 0, 1})), PreconditionError);
}

TEST(Clifford, AnticommutatorsAndSpinCommutators) {
  const auto cl = build_clifford(7);
  ASSERT_EQ(cl.gammas.size(), 7u);
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      const CMatrix ac = cl.gammas[j] * cl.gammas[k] + cl.gammas[k] * cl.gammas[j];
      const CMatrix expect = (j == k ? 2.0 : 0.0) * CMatrix::Identity(8, 8);
      EXPECT_LT(max_abs(ac - expect), 1e-14);
    }
  // [T_12, T_23] = i T_13, from the explicit matrix product.
  const CMatrix lhs = commutator(cl.spin_generator(1, 2), cl.spin_generator(2, 3));
  EXPECT_LT(max_abs(lhs - Complex(0, 1) * cl.spin_generator(1, 3)), 1e-14);
  for (int j = 1; j <= 7; ++j)
    for (int k = j + 1; k <= 7; ++k) {
      const CMatrix t = cl.spin_generator(j, k);
      EXPECT_LT(max_abs(t - t.adjoint()), 1e-14);
      EXPECT_LT(std::abs(t.trace()), 1e-14);
    }
  EXPECT_THROW(build_clifford(5), PreconditionError);
}

TEST(Spinor, SameStructureConstantsUpToRootPhases) {
  const auto vec = build_matrix_rep(Family::B, 3, 0);
  const auto spin = build_matrix_rep(Family::B, 3, 0, RepKind::Spinor);
  const auto fv = structure_constants(vec), fs = structure_constants(spin);
  EXPECT_LT(jacobi_residual(fs), 1e-9);
  // Both bases are root-aligned, so |f| agrees entrywise.
  double worst = 0.0;
  for (std::size_t k = 0; k < fv.data().size(); ++k)
    worst = std::max(worst, std::abs(std::abs(fv.data()[k]) - std::abs(fs.data()[k])));
  EXPECT_LT(worst, 1e-10);
}

TEST(Linalg, ExpmAgreesWithEigen) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = Complex(n(rng), n(rng)) * (trial + 1.0) * 0.3;
    const CMatrix ref = oracle::eigen_expm(a);
    EXPECT_LT(max_abs(expm(a) - ref) / std::max(1.0, max_abs(ref)), 1e-12);
  }
}

TEST(Linalg, NullSpaceOfTallMatrix) {
  RMatrix m = RMatrix::Zero(400, 24);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int i = 0; i < 400; ++i)
    for (int j = 0; j < 20; ++j) m(i, j) = n(rng);
  const RMatrix k = null_space(m, 1e-9);
  EXPECT_EQ(k.cols(), 4);
  EXPECT_LT(max_abs(m * k), 1e-10);
}

TEST(GenericRep, OrthonormalBeforeAlignment) {
  for (auto [fam, rank, kind] : {std::tuple{Family::A, 3, RepKind::Defining}, std::tuple{Family::C, 2, RepKind::Defining},
                                 std::tuple{Family::D, 4, RepKind::Vector}, std::tuple{Family::B, 3, RepKind::Spinor}}) {
    const auto rep = generic_rep(fam, rank, kind);
    EXPECT_LT(rep.orthonormality_residual(), 1e-12);
    EXPECT_EQ(rep.dimension(), (CartanType{fam, rank}.dimension()));
    EXPECT_LT(jacobi_residual(structure_constants(rep)), 1e-9);
  }
}
