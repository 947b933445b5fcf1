#pragma once

#include <string>

#include <json.hpp>

#include "hkt/spaces.hpp"

namespace hkt::cli {

using Json = nlohmann::json;

/// Deterministic serialization: keys sorted, two-space indent, floats as
/// %.17g, non-finite floats as null.
std::string canonical_dump(const Json& j);

Json report_to_json(const VerificationReport& r, double fd_step);
/// Inverse of report_to_json; throws std::runtime_error on schema mismatch.
VerificationReport report_from_json(const Json& j);

Json classification_to_json(const ClassificationRow& row);

}  // namespace hkt::cli
