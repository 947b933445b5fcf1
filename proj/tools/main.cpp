#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "hkt/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace hkt::cli;
  CLI::App app{"hkt: quaternionic triples of complex structures on compact groups and cosets"};
  app.require_subcommand(1);

  std::optional<double> tol;
  CliConfig cfg;
  bool json = false;
  app.add_option("--tol", tol, "residual tolerance (default 1e-9, or $HKT_TOL)");
  app.add_option("--fd-step", cfg.fd_step, "finite-difference step for the Nijenhuis check")->capture_default_str();
  app.add_flag("--json", json, "emit canonical JSON");
  app.add_option("--jobs", cfg.jobs, "worker threads for catalog verification (0 = auto)")->capture_default_str();

  std::string type_arg, spec_arg, family_arg;
  int rank_arg = 0, max_level = 1;
  bool run_verify = false;

  // Subcommands inherit this, so global flags may also follow them.
  app.fallthrough();
  auto* roots = app.add_subcommand("roots", "print a root system, its surgery and basic roots");
  roots->add_option("type", type_arg, "e.g. B3")->required();
  auto* verify = app.add_subcommand("verify", "certify a group manifold or coset");
  verify->add_option("spec", spec_arg, "e.g. A2, A3xU1^1, B3xU1^2/A1:gamma")->required();
  auto* classify = app.add_subcommand("classify", "U(1) padding table for a family");
  classify->add_option("family", family_arg, "A, B, C or D")->required();
  classify->add_option("max_rank", rank_arg, "largest rank")->required();
  auto* catalog = app.add_subcommand("catalog", "enumerate (and optionally verify) cosets of one group");
  catalog->add_option("family", family_arg, "A, B, C or D")->required();
  catalog->add_option("rank", rank_arg, "rank")->required();
  catalog->add_option("--max-level", max_level, "deepest centralizer level to quotient")->capture_default_str();
  catalog->add_flag("--verify", run_verify, "run the full verification on every entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  try {
    cfg.tolerance = resolve_tolerance(tol);
    cfg.format = json ? OutputFormat::Json : OutputFormat::Text;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "hkt: " << e.what() << "\n";
    return kParseError;
  }

  if (*roots) return cmd_roots(type_arg, cfg, std::cout, std::cerr);
  if (*verify) return cmd_verify(spec_arg, cfg, std::cout, std::cerr);
  if (*classify) return cmd_classify(family_arg, rank_arg, cfg, std::cout, std::cerr);
  return cmd_catalog(family_arg, rank_arg, max_level, run_verify, cfg, std::cout, std::cerr);
}
