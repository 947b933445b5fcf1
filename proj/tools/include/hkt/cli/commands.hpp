#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace hkt::cli {

enum ExitCode : int { kCertified = 0, kResidualFailure = 1, kParseError = 2, kNotAdmissible = 3 };

enum class OutputFormat { Text, Json };

struct CliConfig {
  double tolerance = 1e-9;
  double fd_step = 1e-4;
  OutputFormat format = OutputFormat::Text;
  int jobs = 0;  ///< 0 = one worker per hardware thread

  /// Throws std::invalid_argument unless tolerance is in (0, 1e-3] and
  /// fd_step in (0, 1e-2].
  void validate() const;
  int worker_count() const;
};

/// Tolerance from the command line, else from $HKT_TOL, else the default.
/// Throws std::invalid_argument on an unparsable environment value.
double resolve_tolerance(std::optional<double> flag);

int cmd_roots(const std::string& type, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& spec, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const std::string& family, int max_rank, const CliConfig& cfg, std::ostream& out,
                 std::ostream& err);
int cmd_catalog(const std::string& family, int rank, int max_level, bool verify, const CliConfig& cfg,
                std::ostream& out, std::ostream& err);

}  // namespace hkt::cli
