#include <gtest/gtest.h>

#include <chrono>

#include "hkt/error.hpp"
#include "hkt/spaces.hpp"

using namespace hkt;

namespace {

QuotientItem summand(Family f, int rank, const std::string& label, int factor = 0) {
  QuotientItem q;
  q.kind = QuotientKind::Summand;
  q.factor = factor;
  q.type = {f, rank};
  q.root_label = label;
  return q;
}

QuotientItem abelian(int level = 0, int factor = 0) {
  QuotientItem q;
  q.kind = QuotientKind::Abelian;
  q.factor = factor;
  q.level = level;
  return q;
}

SpaceSpec group(std::vector<CartanType> factors, int u1) { return {std::move(factors), u1, {}}; }

SpaceSpec coset(CartanType g, int u1, std::vector<QuotientItem> h) { return {{g}, u1, std::move(h)}; }

// Closed-form paddings of the classical series.
int padding_table(Family f, int n) {
  switch (f) {
    case Family::A: return n % 2 == 0 ? 0 : 1;      // SU(2l+1): 0, SU(2l): 1
    case Family::B: return n;                       // SO(2l+1): l
    case Family::C: return n;                       // Sp(l): l
    case Family::D: return n % 2 == 0 ? n : n - 2;  // SO(4l): 2l, SO(4l+2): 2l-1
  }
  return -1;
}

int lie_dim(Family f, int n) {
  switch (f) {
    case Family::A: return n * (n + 2);
    case Family::B:
    case Family::C: return n * (2 * n + 1);
    case Family::D: return n * (2 * n - 1);
  }
  return -1;
}

void expect_certified(const VerificationReport& r) {
  EXPECT_EQ(r.verdict, Verdict::Certified) << r.name << ": " << r.message;
  for (const auto& f : r.failures) ADD_FAILURE() << r.name << ": " << f;
  EXPECT_LT(r.quaternion, 1e-9) << r.name;
  EXPECT_LT(r.anticommutator, 1e-9) << r.name;
  ASSERT_EQ(r.structures.size(), 3u);
  for (const auto& s : r.structures) {
    EXPECT_LT(s.residuals.integrability, 1e-9) << r.name << " " << s.name;
    EXPECT_LT(s.residuals.square, 1e-9) << r.name << " " << s.name;
    EXPECT_LT(s.residuals.torsion_match, 1e-8) << r.name << " " << s.name;
    EXPECT_LT(s.leakage, 1e-9) << r.name << " " << s.name;
  }
}

}  // namespace

TEST(Padding, MatchesClassicalTable) {
  for (Family f : {Family::A, Family::B, Family::C, Family::D})
    for (int n = f == Family::B ? 2 : f == Family::D ? 3 : 1; n <= max_supported_rank(f); ++n)
      EXPECT_EQ(required_padding(CartanType{f, n}), padding_table(f, n)) << to_char(f) << n;
}

TEST(Padding, ReferenceValuesAndAdditivity) {
  EXPECT_EQ(required_padding(CartanType{Family::A, 2}), 0);
  EXPECT_EQ(required_padding(CartanType{Family::D, 4}), 4);
  EXPECT_EQ(required_padding(CartanType{Family::B, 3}), 3);
  const std::vector<CartanType> product = {{Family::A, 1}, {Family::B, 3}, {Family::A, 2}};
  EXPECT_EQ(required_padding(product), 1 + 3 + 0);
  EXPECT_EQ(required_padding(group(product, 4)), 4);
}

TEST(Classify, RowsAndNames) {
  const auto rows = classify_family(Family::A, 8);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front().type.rank, 1);
  EXPECT_EQ(rows[1].hkt_name, "SU(3)");
  EXPECT_EQ(rows[2].hkt_name, "SU(4) x U(1)");
  const auto b = classify_family(Family::B, 4);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[1].group, "Spin(7)");
  EXPECT_EQ(b[1].classical, "SO(7)");
  EXPECT_EQ(b[1].hkt_name, "Spin(7) x U(1)^3");
  const auto c = classify_family(Family::C, 4);
  EXPECT_EQ(c[0].group, "Sp(1)");
  EXPECT_EQ(classify_family(Family::D, 5).front().type.rank, 3);
  EXPECT_THROW(classify_family(Family::A, 9), UnsupportedFamilyRank);
  EXPECT_THROW(classify_family(Family::B, 5), UnsupportedFamilyRank);
  EXPECT_THROW(classify_family(Family::D, 2), UnsupportedFamilyRank);
}

TEST(Enumerate, A3Catalog) {
  const auto specs = enumerate_quotients({Family::A, 3}, 2);
  std::vector<std::string> names;
  std::vector<int> dims;
  for (const auto& s : specs) {
    names.push_back(space_name(s));
    dims.push_back(tangent_dimension(s));
  }
  EXPECT_EQ(names, (std::vector<std::string>{"SU(4) x U(1)", "SU(4)/SU(2)", "SU(4)/(SU(2) x U(1)) x U(1)",
                                             "SU(4)/U(1) x U(1)^2"}));
  EXPECT_EQ(dims, (std::vector<int>{16, 12, 12, 16}));
}

TEST(Enumerate, EveryEntryIsAdmissible) {
  for (Family f : {Family::A, Family::B, Family::C, Family::D})
    for (int n = f == Family::B ? 2 : f == Family::D ? 3 : 1; n <= max_supported_rank(f); ++n)
      for (const auto& s : enumerate_quotients({f, n}, 3)) {
        const int dim = tangent_dimension(s);
        EXPECT_GT(dim, 0) << space_name(s);
        EXPECT_EQ(dim % 4, 0) << space_name(s);
        EXPECT_EQ(required_padding(s), s.u1_count) << space_name(s);
      }
}

TEST(Enumerate, DimensionsFromSubgroupCounting) {
  // dim G + u1 - dim H, with dim H written out by hand.
  EXPECT_EQ(tangent_dimension(coset({Family::A, 3}, 0, {summand(Family::A, 1, "beta")})), 15 - 3);
  EXPECT_EQ(tangent_dimension(coset({Family::A, 6}, 0, {summand(Family::A, 4, "a2+a3+a4+a5")})), 48 - 24);
  EXPECT_EQ(tangent_dimension(coset({Family::B, 3}, 1, {summand(Family::A, 1, "alpha"), summand(Family::A, 1, "gamma")})),
            21 + 1 - 6);
  EXPECT_EQ(tangent_dimension(coset({Family::B, 3}, 2, {summand(Family::A, 1, "gamma")})), 21 + 2 - 3);
  EXPECT_EQ(tangent_dimension(coset({Family::A, 2}, 1, {abelian()})), 8 + 1 - 1);
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    const int n = f == Family::D ? 4 : 3;
    EXPECT_EQ(tangent_dimension(group({{f, n}}, 2)), lie_dim(f, n) + 2);
  }
}

TEST(Verify, ReferenceGroupsCertify) {
  const std::vector<SpaceSpec> specs = {
      group({{Family::A, 1}}, 1), group({{Family::A, 2}}, 0), group({{Family::A, 3}}, 1),
      group({{Family::A, 4}}, 0), group({{Family::A, 6}}, 0), group({{Family::C, 2}}, 2),
      group({{Family::B, 3}}, 3), group({{Family::D, 4}}, 4), group({{Family::A, 1}, {Family::A, 2}}, 1)};
  for (const auto& s : specs) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify(s);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect_certified(r);
    EXPECT_LT(r.jacobi, 1e-9);
    EXPECT_LT(r.automorphism_orthogonality, 1e-9);
    EXPECT_LT(r.automorphism_invariance, 1e-9);
    EXPECT_EQ(r.padding_required, s.u1_count);
    EXPECT_EQ(r.dimension, tangent_dimension(s));
    EXPECT_LT(secs, 10.0) << r.name;
  }
}

TEST(Verify, GroupReportMatchesDirectConstruction) {
  const auto spec = group({{Family::B, 3}}, 3);
  const auto r = verify(spec);
  const auto rep = build_matrix_rep(Family::B, 3, 3);
  const auto chain = basic_roots(rep);
  std::vector<std::string> labels;
  for (const auto& b : chain.flat()) labels.push_back(b.label);
  EXPECT_EQ(r.basic_roots_used, labels);
  const auto f = structure_constants(rep);
  const auto t = build_quaternion_triple(rep, chain, build_pairing(rep, chain.flat()));
  EXPECT_NEAR(r.structures[1].residuals.integrability, integrability_residual(t.J, f), 1e-14);
  EXPECT_NEAR(r.quaternion, quaternion_residual(t.I, t.J, t.K), 1e-14);
}

TEST(Verify, ReferenceCosetsCertify) {
  const std::vector<std::pair<SpaceSpec, int>> cases = {
      {coset({Family::A, 3}, 0, {summand(Family::A, 1, "beta")}), 12},
      {coset({Family::A, 3}, 1, {summand(Family::A, 1, "beta"), abelian()}), 12},
      {coset({Family::A, 2}, 1, {abelian()}), 8},
      {coset({Family::A, 6}, 0, {summand(Family::A, 4, "a2+a3+a4+a5")}), 24},
      {coset({Family::B, 3}, 1, {summand(Family::A, 1, "alpha"), summand(Family::A, 1, "gamma")}), 16},
      {coset({Family::B, 3}, 2, {summand(Family::A, 1, "alpha")}), 20},
      {coset({Family::B, 3}, 2, {summand(Family::A, 1, "gamma")}), 20},
      {coset({Family::C, 3}, 1, {summand(Family::C, 2, "2beta+gamma")}), 12},
  };
  for (const auto& [spec, dim] : cases) {
    const auto r = verify(spec);
    EXPECT_EQ(r.dimension, dim) << r.name;
    expect_certified(r);
  }
}

TEST(Verify, CosetTripleAnticommutesOnTheTangentSpace) {
  const auto r = build_coset_triple(coset({Family::B, 3}, 1, {summand(Family::A, 1, "alpha"), summand(Family::A, 1, "gamma")}));
  EXPECT_EQ(r.name, "Spin(7)/(SU(2) x SU(2)) x U(1)");
  EXPECT_LT(r.anticommutator, 1e-9);
  for (const auto& s : r.structures) EXPECT_EQ(static_cast<int>(s.blocks.size()) * 4, r.dimension);
}

TEST(Verify, WrongPaddingIsNotAdmissible) {
  const auto r = verify(group({{Family::A, 3}}, 0));
  EXPECT_EQ(r.verdict, Verdict::NotAdmissible);
  EXPECT_NE(r.message.find("requires 1 U(1) factor (got 0)"), std::string::npos) << r.message;
  EXPECT_EQ(verify(group({{Family::B, 3}}, 1)).verdict, Verdict::NotAdmissible);
  EXPECT_EQ(verify(coset({Family::A, 3}, 1, {summand(Family::A, 1, "beta")})).verdict, Verdict::NotAdmissible);
}

TEST(Verify, BadQuotientItemsAreRejected) {
  EXPECT_THROW(verify(coset({Family::A, 3}, 0, {summand(Family::A, 1, "alpha")})), PreconditionError);
  EXPECT_THROW(verify(coset({Family::A, 3}, 0, {summand(Family::A, 2, "beta")})), PreconditionError);
  EXPECT_THROW(verify(coset({Family::A, 3}, 0, {summand(Family::A, 1, "beta", 1)})), PreconditionError);
  EXPECT_THROW(build_coset_triple(group({{Family::A, 2}}, 0)), PreconditionError);
}

TEST(Verify, TightToleranceFailsHonestly) {
  VerifyOptions opts;
  opts.tol = 1e-30;
  const auto r = verify(group({{Family::A, 2}}, 0), opts);
  EXPECT_EQ(r.verdict, Verdict::Failed);
  EXPECT_FALSE(r.failures.empty());
}
