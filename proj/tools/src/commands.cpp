#include "hkt/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hkt/cli/json_io.hpp"
#include "hkt/cli/spec_string.hpp"
#include "hkt/error.hpp"
#include "hkt/spaces.hpp"

namespace hkt::cli {

void CliConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-3)) throw std::invalid_argument("--tol must lie in (0, 1e-3]");
  if (!(fd_step > 0.0 && fd_step <= 1e-2)) throw std::invalid_argument("--fd-step must lie in (0, 1e-2]");
  if (jobs < 0) throw std::invalid_argument("--jobs must be non-negative");
}

int CliConfig::worker_count() const {
  if (jobs > 0) return jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double resolve_tolerance(std::optional<double> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HKT_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw std::invalid_argument(std::string("HKT_TOL is not a number: ") + env);
    return v;
  }
  return CliConfig{}.tolerance;
}

namespace {

std::string coords_text(const Coords& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + ")";
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

Json roots_json(const RootSystem& rs) {
  Json j;
  j["type"] = rs.name();
  j["rank"] = rs.rank();
  j["dimension"] = rs.dimension();
  Json simple = Json::array();
  for (const auto& r : rs.simple_roots())
    simple.push_back({{"label", rs.label(r.coords)}, {"coords", r.coords}, {"long", r.length == LengthClass::Long}});
  j["simple_roots"] = simple;
  j["cartan_matrix"] = rs.cartan_matrix();
  Json pos = Json::array();
  for (const auto& r : rs.positive_roots())
    pos.push_back({{"label", rs.label(r.coords)}, {"coords", r.coords}, {"height", r.height()}});
  j["positive_roots"] = pos;
  j["highest_root"] = {{"label", rs.label(rs.highest_root().coords)}, {"coords", rs.highest_root().coords}};
  const SurgeryResult s = extended_dynkin_surgery(rs);
  Json summands = Json::array();
  for (const auto& sub : s.summands)
    summands.push_back({{"type", sub.name()}, {"highest_root", rs.label(sub.highest_root().coords)}});
  j["surgery"] = {{"summands", summands}, {"abelian_rank", s.abelian_rank}};
  j["required_padding"] = required_padding(rs.type());
  return j;
}

void chain_lines(const ChainNode& node, const RootSystem& rs, std::vector<std::vector<std::string>>& levels) {
  if (levels.size() <= static_cast<std::size_t>(node.depth)) levels.resize(static_cast<std::size_t>(node.depth) + 1);
  levels[static_cast<std::size_t>(node.depth)].push_back(rs.label(node.basic_root().coords));
  for (const auto& c : node.children) chain_lines(c, rs, levels);
}

void roots_text(const RootSystem& rs, std::ostream& out) {
  out << rs.name() << ": rank " << rs.rank() << ", dimension " << rs.dimension() << ", "
      << rs.positive_roots().size() << " positive roots\n";
  out << "simple roots:\n";
  for (const auto& r : rs.simple_roots())
    out << "  " << pad(rs.label(r.coords), 8) << pad(coords_text(r.coords), 16)
        << (r.length == LengthClass::Long ? "long" : "short") << "\n";
  out << "Cartan matrix:\n";
  for (const auto& row : rs.cartan_matrix()) {
    out << " ";
    for (int v : row) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "%3d", v);
      out << buf;
    }
    out << "\n";
  }
  out << "positive roots:\n";
  for (const auto& r : rs.positive_roots())
    out << "  h=" << r.height() << "  " << pad(rs.label(r.coords), 24) << coords_text(r.coords) << "\n";
  out << "highest root: " << rs.label(rs.highest_root().coords) << " " << coords_text(rs.highest_root().coords)
      << "\n";
  const SurgeryResult s = extended_dynkin_surgery(rs);
  out << "extended Dynkin surgery:";
  if (s.summands.empty()) out << " no simple summands";
  for (std::size_t k = 0; k < s.summands.size(); ++k)
    out << (k ? " +" : "") << " " << s.summands[k].name() << " [" << rs.label(s.summands[k].highest_root().coords)
        << "]";
  out << ", abelian rank " << s.abelian_rank << "\n";
  std::vector<std::vector<std::string>> levels;
  chain_lines(basic_root_tree(rs), rs, levels);
  out << "basic roots:\n";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    out << "  level " << k << ":";
    for (const auto& l : levels[k]) out << " " << l;
    out << "\n";
  }
  out << "required U(1) padding: " << required_padding(rs.type()) << "\n";
}

void report_text(const VerificationReport& r, std::ostream& out) {
  out << "space       " << r.name << "\n";
  out << "spec        " << format_spec(r.spec) << "\n";
  out << "dimension   " << r.dimension << "\n";
  out << "padding     " << r.padding_required << " required, " << r.spec.u1_count << " given\n";
  if (r.verdict == Verdict::NotAdmissible) {
    out << "verdict     not-admissible: " << r.message << "\n";
    return;
  }
  out << "basic roots";
  for (const auto& b : r.basic_roots_used) out << " " << b;
  out << "\nautomorphisms";
  for (const auto& a : r.automorphisms) out << " " << a;
  out << "\n\n          integrab.  square     Bismut     torsion    Nijenhuis  leakage\n";
  for (const auto& s : r.structures) {
    out << "  " << pad(s.name, 8) << pad(sci(s.residuals.integrability), 11) << pad(sci(s.residuals.square), 11)
        << pad(sci(s.residuals.bismut), 11) << pad(sci(s.residuals.torsion_match), 11)
        << pad(sci(s.residuals.nijenhuis), 11) << sci(s.leakage) << "\n";
  }
  for (const auto& s : r.structures) {
    out << "  " << s.name << " blocks:";
    for (const auto& b : s.blocks) out << " " << b.label << "=" << to_string(b.tag);
    out << "\n";
  }
  out << "\nquaternion  " << sci(r.quaternion) << "\n";
  out << "anticomm.   " << sci(r.anticommutator) << "\n";
  out << "aut. orth.  " << sci(r.automorphism_orthogonality) << "\n";
  out << "aut. inv.   " << sci(r.automorphism_invariance) << "\n";
  out << "Jacobi      " << sci(r.jacobi) << "\n";
  if (!r.spec.is_group()) out << "coset mix   " << sci(r.coset_closure_residual) << " (reported only)\n";
  for (const auto& w : r.warnings) out << "warning     " << w << "\n";
  for (const auto& f : r.failures) out << "failure     " << f << "\n";
  out << "verdict     " << to_string(r.verdict) << " (max residual " << sci(r.max_residual()) << ", tol "
      << sci(r.tolerance) << ")\n";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Certified: return kCertified;
    case Verdict::Failed: return kResidualFailure;
    case Verdict::NotAdmissible: return kNotAdmissible;
  }
  return kResidualFailure;
}

VerifyOptions options_from(const CliConfig& cfg) {
  VerifyOptions o;
  o.tol = cfg.tolerance;
  o.fd_step = cfg.fd_step;
  return o;
}

VerificationReport failed_report(const SpaceSpec& spec, const CliConfig& cfg, const std::string& why) {
  VerificationReport r;
  r.spec = spec;
  r.name = space_name(spec);
  r.tolerance = cfg.tolerance;
  r.verdict = Verdict::Failed;
  r.message = why;
  r.failures.push_back(why);
  return r;
}

Family parse_family(const std::string& s) {
  if (s.size() != 1) throw UnsupportedFamilyRank("family must be one of A, B, C, D; got '" + s + "'");
  return family_from_char(s[0]);
}

}  // namespace

int cmd_roots(const std::string& type, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  CartanType t;
  try {
    t = parse_cartan_type(type);
  } catch (const std::exception& e) {
    err << "roots: " << e.what() << "\n";
    return kParseError;
  }
  const RootSystem rs = RootSystem::build(t.family, t.rank);
  if (cfg.format == OutputFormat::Json) out << canonical_dump(roots_json(rs));
  else roots_text(rs, out);
  return 0;
}

int cmd_verify(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  SpaceSpec spec;
  try {
    spec = parse_spec(text);
  } catch (const ParseError& e) {
    err << "verify: " << e.what() << "\n";
    return kParseError;
  }
  VerificationReport r;
  try {
    r = verify(spec, options_from(cfg));
  } catch (const PreconditionError& e) {
    err << "verify: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    r = failed_report(spec, cfg, e.what());
  }
  if (cfg.format == OutputFormat::Json) out << canonical_dump(report_to_json(r, cfg.fd_step));
  else report_text(r, out);
  if (r.verdict != Verdict::Certified) err << "verify: " << r.message << "\n";
  return exit_code(r.verdict);
}

int cmd_classify(const std::string& family, int max_rank, const CliConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  std::vector<ClassificationRow> rows;
  try {
    rows = classify_family(parse_family(family), max_rank);
  } catch (const Error& e) {
    err << "classify: " << e.what() << "\n";
    return kParseError;
  }
  if (cfg.format == OutputFormat::Json) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(classification_to_json(r));
    out << canonical_dump(a);
    return 0;
  }
  out << "rank  group      classical  padding  HKT group manifold\n";
  for (const auto& r : rows)
    out << pad(std::to_string(r.type.rank), 6) << pad(r.group, 11) << pad(r.classical, 11)
        << pad(std::to_string(r.padding), 9) << r.hkt_name << "\n";
  return 0;
}

int cmd_catalog(const std::string& family, int rank, int max_level, bool run_verify, const CliConfig& cfg,
                std::ostream& out, std::ostream& err) {
  std::vector<SpaceSpec> specs;
  try {
    if (max_level < 0) throw PreconditionError("--max-level must be non-negative");
    const Family f = parse_family(family);
    check_family_rank(f, rank);
    specs = enumerate_quotients({f, rank}, max_level);
  } catch (const Error& e) {
    err << "catalog: " << e.what() << "\n";
    return kParseError;
  }

  std::vector<VerificationReport> reports(specs.size());
  if (run_verify) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < specs.size(); k = next++) {
        try {
          reports[k] = verify(specs[k], options_from(cfg));
        } catch (const std::exception& e) {
          reports[k] = failed_report(specs[k], cfg, e.what());
        }
      }
    };
    const int n = std::min<int>(cfg.worker_count(), static_cast<int>(specs.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }

  int code = 0;
  if (cfg.format == OutputFormat::Json) {
    Json a = Json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
      if (run_verify) {
        a.push_back(report_to_json(reports[k], cfg.fd_step));
      } else {
        a.push_back({{"spec", format_spec(specs[k])},
                     {"name", space_name(specs[k])},
                     {"dimension", tangent_dimension(specs[k])},
                     {"padding_required", specs[k].u1_count}});
      }
    }
    out << canonical_dump(a);
  } else {
    std::size_t spec_w = 6, name_w = 7;
    for (const auto& s : specs) {
      spec_w = std::max(spec_w, format_spec(s).size() + 2);
      name_w = std::max(name_w, space_name(s).size() + 2);
    }
    out << pad("spec", spec_w) << pad("space", name_w) << pad("dim", 5) << pad("U(1)", 6)
        << (run_verify ? "verdict        max residual" : "") << "\n";
    for (std::size_t k = 0; k < specs.size(); ++k) {
      out << pad(format_spec(specs[k]), spec_w) << pad(space_name(specs[k]), name_w)
          << pad(std::to_string(tangent_dimension(specs[k])), 5) << pad(std::to_string(specs[k].u1_count), 6);
      if (run_verify) out << pad(to_string(reports[k].verdict), 15) << sci(reports[k].max_residual());
      out << "\n";
    }
  }
  if (run_verify)
    for (const auto& r : reports)
      if (r.verdict != Verdict::Certified) {
        err << "catalog: " << r.name << ": " << r.message << "\n";
        code = kResidualFailure;
      }
  return code;
}

}  // namespace hkt::cli
