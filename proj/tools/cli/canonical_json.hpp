#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace dytwist::cli {

/// Serializes with sorted keys, two-space indentation, 17 significant
/// digits for floats and null for non-finite floats. Parsing the output and
/// serializing again reproduces it byte for byte.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace dytwist::cli
