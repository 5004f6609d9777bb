#pragma once

#include <string>

#include <json.hpp>

#include "mpsham/intersect.hpp"
#include "mpsham/mps.hpp"

namespace mpsham {

using Json = nlohmann::json;

/// Tensor wire format:
///   {"d": int, "D": int, "entries": [[[ [re, im], ... beta ] ... alpha ] ... i ]}
/// entries[i][alpha][beta] = [re, im].  Serialization uses shortest
/// round-trip doubles, so write/read round-trips bit-exactly for finite
/// values.
Json tensor_to_json(const MpsTensor& t);
MpsTensor tensor_from_json(const Json& j);

void save_tensor(const MpsTensor& t, const std::string& path);
MpsTensor load_tensor(const std::string& path);

/// Deterministic payload of a report; timing and memory go to the run log,
/// never into canonical records.
Json report_to_json(const IntersectionReport& rep);

/// 16-hex-digit FNV-1a hash of a canonically serialized JSON value.
std::string json_hash(const Json& j);

}  // namespace mpsham
