#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>

#include "hkt/cli/commands.hpp"
#include "hkt/cli/json_io.hpp"
#include "hkt/cli/spec_string.hpp"

using namespace hkt;
using namespace hkt::cli;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the installed-layout binary with stderr folded into stdout.
RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + HKT_BINARY + std::string(" ") + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(SpecString, ParsesGroupsAndCosets) {
  const auto g = parse_spec("B3xU1^3");
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].family, Family::B);
  EXPECT_EQ(g.factors[0].rank, 3);
  EXPECT_EQ(g.u1_count, 3);
  EXPECT_TRUE(g.is_group());

  const auto c = parse_spec("A3xU1^1/A1:betaxU1");
  ASSERT_EQ(c.quotient.size(), 2u);
  EXPECT_EQ(c.quotient[0].kind, QuotientKind::Summand);
  EXPECT_EQ(c.quotient[0].root_label, "beta");
  EXPECT_EQ(c.quotient[1].kind, QuotientKind::Abelian);
  EXPECT_EQ(c.quotient[1].level, 0);

  const auto p = parse_spec("A1xA2xU1/A1:alpha@2");
  ASSERT_EQ(p.factors.size(), 2u);
  EXPECT_EQ(p.u1_count, 1);
  EXPECT_EQ(p.quotient[0].factor, 1);
  EXPECT_EQ(parse_spec("A2xU1").u1_count, 1);
}

TEST(SpecString, FormatRoundTrips) {
  for (const char* s : {"A2", "A3xU1^1", "B3xU1^2/A1:gamma", "A3xU1^1/A1:betaxU1:1", "A3xU1^2/U1",
                        "A1xA2xU1^1/A1:alpha@1", "D4xU1^1/A1:alphaxA1:gammaxA1:delta", "A6/A4:a2+a3+a4+a5"}) {
    const auto spec = parse_spec(s);
    EXPECT_EQ(parse_spec(format_spec(spec)), spec) << s;
  }
  EXPECT_EQ(format_spec(parse_spec("B3xU1^2/A1:gamma")), "B3xU1^2/A1:gamma");
}

TEST(SpecString, RejectsMalformedInput) {
  for (const char* s : {"", "E6", "A0", "B1", "D2", "A3xU1^", "U1^2xA3", "A3/", "A3/A1", "A3/:beta", "A3xU1^-1",
                        "A3//A1:beta", "A3xx", "A3/A1:beta@"}) {
    EXPECT_THROW(parse_spec(s), std::exception) << '"' << s << '"';
  }
  try {
    parse_spec("Q5");
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("A3xU1^1"), std::string::npos) << "grammar hint missing: " << e.what();
  }
}

TEST(Json, CanonicalDumpIsDeterministic) {
  Json j = {{"b", 1.0}, {"a", {0.1, 2.0, std::nan("")}}, {"c", "x"}};
  EXPECT_EQ(canonical_dump(j), "{\n  \"a\": [\n    0.10000000000000001,\n    2.0,\n    null\n  ],\n  \"b\": 1.0,\n  \"c\": \"x\"\n}\n");
}

TEST(Json, ReportRoundTripIsByteIdentical) {
  for (const char* s : {"A2", "A1xU1", "B3xU1^2/A1:gamma", "A3"}) {
    const auto r = verify(parse_spec(s));
    const std::string a = canonical_dump(report_to_json(r, 1e-4));
    const auto back = report_from_json(Json::parse(a));
    EXPECT_EQ(canonical_dump(report_to_json(back, 1e-4)), a) << s;
    EXPECT_EQ(back.verdict, r.verdict);
    EXPECT_EQ(back.spec, r.spec);
  }
  EXPECT_THROW(report_from_json(Json{{"schema", "something-else"}}), std::exception);
}

TEST(Commands, InProcessVerify) {
  CliConfig cfg;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("A2", cfg, out, err), kCertified);
  EXPECT_NE(out.str().find("certified"), std::string::npos);
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_verify("A3", cfg, out2, err2), kNotAdmissible);
  std::ostringstream out3, err3;
  EXPECT_EQ(cmd_verify("nonsense", cfg, out3, err3), kParseError);
}

TEST(Config, ValidatesTolerances) {
  CliConfig cfg;
  cfg.tolerance = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.tolerance = 1e-9;
  cfg.fd_step = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.fd_step = 1e-4;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(resolve_tolerance(1e-7), 1e-7);
}

TEST(Binary, VerifyExitCodes) {
  EXPECT_EQ(run("verify A2").code, 0);
  const auto a3 = run("verify A3");
  EXPECT_EQ(a3.code, 3);
  EXPECT_NE(a3.out.find("requires 1 U(1) factor"), std::string::npos) << a3.out;
  EXPECT_EQ(run("verify A3xQ").code, 2);
  EXPECT_EQ(run("verify A3/A1:alpha").code, 2);
  EXPECT_EQ(run("verify A2 --tol 1").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify E8").code, 2);
  EXPECT_EQ(run("verify D2").code, 2);
}

TEST(Binary, JsonCertificate) {
  const auto r = run("verify B3xU1^3 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "hkt-certificate/1");
  EXPECT_EQ(j.at("dimension"), 24);
  EXPECT_EQ(j.at("verdict"), "certified");
  EXPECT_LT(j.at("residuals").at("max").get<double>(), 1e-8);
  // Re-serializing the printed certificate reproduces it byte for byte.
  EXPECT_EQ(canonical_dump(j), r.out);
}

TEST(Binary, ToleranceFromEnvironment) {
  const auto tight = run("verify A2 --json", "HKT_TOL=1e-30");
  EXPECT_EQ(tight.code, 1) << tight.out;
  EXPECT_EQ(run("verify A2", "HKT_TOL=garbage").code, 2);
  EXPECT_EQ(run("verify A2 --tol 1e-8", "HKT_TOL=1e-30").code, 0);
}

TEST(Binary, RootsClassifyCatalog) {
  const auto b3 = run("roots B3");
  EXPECT_EQ(b3.code, 0);
  EXPECT_NE(b3.out.find("alpha+2beta+2gamma"), std::string::npos);
  const auto d4 = run("roots D4 --json");
  ASSERT_EQ(d4.code, 0);
  EXPECT_EQ(Json::parse(d4.out).at("required_padding"), 4);
  EXPECT_EQ(run("roots A1").code, 0);
  EXPECT_EQ(run("roots B1").code, 2);
  const auto c = run("classify C 1 --json");
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(Json::parse(c.out).size(), 1u);
  EXPECT_EQ(run("classify B 9").code, 2);
  const auto cat = run("catalog A 3 --verify --jobs 2");
  EXPECT_EQ(cat.code, 0) << cat.out;
  EXPECT_NE(cat.out.find("SU(4)/(SU(2) x U(1)) x U(1)"), std::string::npos);
}
