#pragma once

#include <stdexcept>
#include <string>

#include "hkt/spaces.hpp"

namespace hkt::cli {

/// Malformed spec string; the message ends with a grammar hint.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSpecGrammar =
    "FACTOR(xFACTOR)*[xU1^N][/ITEM(xITEM)*] with FACTOR like A2, B3, C2, D4 and ITEM either "
    "TYPE:rootlabel[@k] (e.g. A1:gamma) or U1[:level][@k]; examples: A2, A3xU1^1, B3xU1^2/A1:gamma";

/// Parses e.g. "B3xU1^2/A1:gamma" or "A3xU1^1/A1:betaxU1". Family/rank
/// validity is checked; whether quotient items exist is left to resolution.
SpaceSpec parse_spec(const std::string& text);

/// Canonical form accepted by parse_spec.
std::string format_spec(const SpaceSpec& spec);

/// "B3" -> {B, 3}.
CartanType parse_cartan_type(const std::string& text);

}  // namespace hkt::cli
