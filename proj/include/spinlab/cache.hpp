#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "spinlab/basis.hpp"

namespace spinlab {

using json = nlohmann::ordered_json;

/// Render with 17 significant digits; re-parsing is lossless.
std::string format_double(double v);

/// Content-addressed result cache keyed by a canonical parameter string.
struct CacheConfig {
  std::filesystem::path dir;
  bool enabled = true;
};

/// FNV-1a hash of (library version, canonical parameters), hex-encoded.
std::string cache_key(const std::string& canonical_params);

/// A corrupt entry counts as a miss (warning to stderr; it will be
/// recomputed and overwritten).
std::optional<json> cache_lookup(const CacheConfig& cfg, const std::string& key);
void cache_store(const CacheConfig& cfg, const std::string& key, const json& doc);

/// Triplet serialization of an assembled matrix, for caching.
/// Header carries n_sites, sector and the hash of the source operator.
json matrix_to_json(const OperatorMatrix& m, const std::string& term_hash);
OperatorMatrix matrix_from_json(const json& doc);
std::string pauli_sum_hash(const PauliSum& h);

}  // namespace spinlab
