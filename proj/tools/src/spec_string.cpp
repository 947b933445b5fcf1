#include "hkt/cli/spec_string.hpp"

#include <cctype>
#include <vector>

#include "hkt/error.hpp"

namespace hkt::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what + "; expected " + kSpecGrammar); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  if (s.empty() || s.size() > 6) fail("bad number '" + s + "' in " + context);
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad number '" + s + "' in " + context);
  return std::stoi(s);
}

bool is_u1(const std::string& s) { return s.size() >= 2 && s[0] == 'U' && s[1] == '1'; }

}  // namespace

CartanType parse_cartan_type(const std::string& text) {
  if (text.size() < 2 || !std::isalpha(static_cast<unsigned char>(text[0]))) fail("bad factor '" + text + "'");
  const char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (fam < 'A' || fam > 'D') fail("unknown family in '" + text + "'");
  CartanType t{family_from_char(fam), parse_int(text.substr(1), "factor '" + text + "'")};
  try {
    check_family_rank(t.family, t.rank);
  } catch (const UnsupportedFamilyRank& e) {
    fail(e.what());
  }
  return t;
}

SpaceSpec parse_spec(const std::string& text) {
  if (text.empty()) fail("empty spec");
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c))) fail("whitespace in spec '" + text + "'");
  const auto slash = split(text, '/');
  if (slash.size() > 2) fail("more than one '/' in '" + text + "'");

  SpaceSpec spec;
  bool seen_u1 = false;
  for (const auto& tok : split(slash[0], 'x')) {
    if (tok.empty()) fail("empty factor in '" + text + "'");
    if (is_u1(tok)) {
      if (seen_u1) fail("U(1) count given twice in '" + text + "'");
      seen_u1 = true;
      if (tok == "U1") spec.u1_count = 1;
      else if (tok.size() > 3 && tok[2] == '^') spec.u1_count = parse_int(tok.substr(3), "'" + tok + "'");
      else fail("bad U(1) term '" + tok + "'");
      continue;
    }
    if (seen_u1) fail("simple factors must precede the U(1) term in '" + text + "'");
    spec.factors.push_back(parse_cartan_type(tok));
  }
  if (spec.factors.empty()) fail("no simple factor in '" + text + "'");

  if (slash.size() == 2) {
    if (slash[1].empty()) fail("empty quotient in '" + text + "'");
    for (auto tok : split(slash[1], 'x')) {
      if (tok.empty()) fail("empty quotient item in '" + text + "'");
      QuotientItem item;
      const auto at = tok.find('@');
      if (at != std::string::npos) {
        item.factor = parse_int(tok.substr(at + 1), "'" + tok + "'") - 1;
        if (item.factor < 0 || item.factor >= static_cast<int>(spec.factors.size())) {
          fail("factor index out of range in '" + tok + "'");
        }
        tok = tok.substr(0, at);
      }
      const auto colon = tok.find(':');
      const std::string head = tok.substr(0, colon);
      const std::string tail = colon == std::string::npos ? "" : tok.substr(colon + 1);
      if (head == "U1") {
        item.kind = QuotientKind::Abelian;
        item.level = tail.empty() ? 0 : parse_int(tail, "'" + tok + "'");
        if (colon != std::string::npos && item.level < 1) fail("U(1) level must be at least 1 in '" + tok + "'");
      } else {
        if (tail.empty()) fail("quotient summand '" + tok + "' needs a root label");
        item.kind = QuotientKind::Summand;
        item.type = parse_cartan_type(head);
        item.root_label = tail;
        item.level = 1;
      }
      spec.quotient.push_back(std::move(item));
    }
  }
  return spec;
}

std::string format_spec(const SpaceSpec& spec) {
  std::string out;
  for (std::size_t k = 0; k < spec.factors.size(); ++k) out += (k ? "x" : "") + spec.factors[k].name();
  if (spec.u1_count > 0) out += "xU1^" + std::to_string(spec.u1_count);
  for (std::size_t k = 0; k < spec.quotient.size(); ++k) {
    const auto& item = spec.quotient[k];
    out += k ? "x" : "/";
    if (item.kind == QuotientKind::Summand) out += item.type.name() + ":" + item.root_label;
    else out += item.level > 0 ? "U1:" + std::to_string(item.level) : "U1";
    if (item.factor > 0) out += "@" + std::to_string(item.factor + 1);
  }
  return out;
}

}  // namespace hkt::cli
