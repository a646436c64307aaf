#pragma once

#include <string>

#include <json.hpp>

namespace bermuda {

// FNV-1a over the canonical (sorted-key) JSON dump; stable across runs.
std::string config_hash(const nlohmann::json& config);

// Writes `<data_path>.provenance.json` next to a data file: the config that
// produced it, its hash, and the library version. No timestamps, so repeated
// runs with the same config produce byte-identical sidecars.
void write_provenance(const std::string& data_path, const nlohmann::json& config);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bermuda
