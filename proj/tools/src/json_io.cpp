#include "hkt/cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "hkt/cli/spec_string.hpp"

namespace hkt::cli {

namespace {

constexpr const char* kSchema = "hkt-certificate/1";

void dump_to(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_to(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        dump_to(j[k], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s = buf;
      // Keep floats recognizable as floats after a round trip.
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

double num(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_null() ? std::nan("") : v.get<double>();
}

Json blocks_json(const std::vector<BlockInfo>& blocks) {
  Json a = Json::array();
  for (const auto& b : blocks) a.push_back({{"label", b.label}, {"tag", to_string(b.tag)}});
  return a;
}

BlockTag tag_from_string(const std::string& s) {
  for (auto t : {BlockTag::ScriptI, BlockTag::ScriptJ, BlockTag::MinusScriptJ, BlockTag::ScriptK,
                 BlockTag::MinusScriptK, BlockTag::Other})
    if (to_string(t) == s) return t;
  throw std::runtime_error("unknown block tag '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::Certified, Verdict::Failed, Verdict::NotAdmissible})
    if (to_string(v) == s) return v;
  throw std::runtime_error("unknown verdict '" + s + "'");
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_to(j, out, 0);
  out += "\n";
  return out;
}

Json report_to_json(const VerificationReport& r, double fd_step) {
  Json j;
  j["schema"] = kSchema;
  j["spec"] = format_spec(r.spec);
  j["name"] = r.name;
  j["dimension"] = r.dimension;
  j["u1_count"] = r.spec.u1_count;
  j["padding_required"] = r.padding_required;
  j["verdict"] = to_string(r.verdict);
  j["message"] = r.message;
  j["tolerance"] = r.tolerance;
  j["fd_step"] = fd_step;
  j["basic_roots"] = r.basic_roots_used;
  j["automorphisms"] = r.automorphisms;
  j["failures"] = r.failures;
  j["warnings"] = r.warnings;
  Json s = Json::object();
  for (const auto& st : r.structures) {
    s[st.name] = {
        {"integrability", st.residuals.integrability},
        {"square", st.residuals.square},
        {"bismut", st.residuals.bismut},
        {"torsion_match", st.residuals.torsion_match},
        {"nijenhuis", st.residuals.nijenhuis},
        {"nijenhuis_warning", st.residuals.warning},
        {"leakage", st.leakage},
        {"blocks", blocks_json(st.blocks)},
    };
  }
  j["structures"] = s;
  j["residuals"] = {
      {"quaternion", r.quaternion},
      {"anticommutator", r.anticommutator},
      {"automorphism_orthogonality", r.automorphism_orthogonality},
      {"automorphism_invariance", r.automorphism_invariance},
      {"jacobi", r.jacobi},
      {"coset_closure", r.coset_closure_residual},
      {"max", r.max_residual()},
  };
  return j;
}

VerificationReport report_from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != kSchema) throw std::runtime_error("unsupported certificate schema");
  VerificationReport r;
  r.spec = parse_spec(j.at("spec").get<std::string>());
  r.name = j.at("name").get<std::string>();
  r.dimension = j.at("dimension").get<int>();
  r.padding_required = j.at("padding_required").get<int>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.message = j.at("message").get<std::string>();
  r.tolerance = num(j, "tolerance");
  r.basic_roots_used = j.at("basic_roots").get<std::vector<std::string>>();
  r.automorphisms = j.at("automorphisms").get<std::vector<std::string>>();
  r.failures = j.at("failures").get<std::vector<std::string>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const char* name : {"I", "J", "K"}) {
    if (!j.at("structures").contains(name)) continue;
    const Json& s = j.at("structures").at(name);
    StructureReport st;
    st.name = name;
    st.residuals.integrability = num(s, "integrability");
    st.residuals.square = num(s, "square");
    st.residuals.bismut = num(s, "bismut");
    st.residuals.torsion_match = num(s, "torsion_match");
    st.residuals.nijenhuis = num(s, "nijenhuis");
    st.residuals.warning = s.at("nijenhuis_warning").get<std::string>();
    st.leakage = num(s, "leakage");
    for (const auto& b : s.at("blocks")) st.blocks.push_back({b.at("label").get<std::string>(), tag_from_string(b.at("tag").get<std::string>())});
    r.structures.push_back(std::move(st));
  }
  const Json& res = j.at("residuals");
  r.quaternion = num(res, "quaternion");
  r.anticommutator = num(res, "anticommutator");
  r.automorphism_orthogonality = num(res, "automorphism_orthogonality");
  r.automorphism_invariance = num(res, "automorphism_invariance");
  r.jacobi = num(res, "jacobi");
  r.coset_closure_residual = num(res, "coset_closure");
  return r;
}

Json classification_to_json(const ClassificationRow& row) {
  return {{"type", row.type.name()},  {"rank", row.type.rank},       {"padding", row.padding},
          {"group", row.group},       {"classical", row.classical}, {"hkt_group", row.hkt_name}};
}

}  // namespace hkt::cli
