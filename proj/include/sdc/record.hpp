#pragma once

// Machine-readable forms of code records and certificates.

#include <string>

#include "json.hpp"
#include "sdc/analysis.hpp"
#include "sdc/shadow_theory.hpp"

namespace sdc {

constexpr int kSchemaVersion = 1;

/// Generator rows are hex strings, least significant coordinate first
/// within each byte (see BitVector::to_hex).
nlohmann::json to_json(const CodeRecord& rec);
/// Inverse of to_json. Params are re-validated against the tabulated field
/// context for their p. Throws parse_error.
CodeRecord record_from_json(const nlohmann::json& j);

/// "u1,u2,u3,v1,v2,s,beta,I_2d" plus d and A_d.
std::string csv_header();
std::string csv_row(const CodeRecord& rec);
std::string to_text(const CodeRecord& rec);

nlohmann::json to_json(const Certificate& cert);
std::string to_text(const Certificate& cert);

nlohmann::json to_json(const RangeRestriction& rr);

}  // namespace sdc
