#pragma once

#include <optional>
#include <string>

#include "srl/report.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Results cache.
//
// Expensive certificates (exhaustive negative witness searches) are cached
// as one JSON file per key under a user-chosen directory.  The key is a
// fingerprint of a canonical configuration string plus the library
// version, so upgrading the library or changing any run parameter misses
// cleanly.  Corrupt or mismatched entries are reported on stderr and
// treated as misses; the caller recomputes.
// ---------------------------------------------------------------------------

inline constexpr const char* kCodeVersion = "0.1.0";

// 16-hex-digit fingerprint of config + kCodeVersion.
std::string cache_key(const std::string& canonical_config);

// The stored record on a hit, std::nullopt on miss or corruption.
std::optional<Json> cache_lookup(const std::string& dir,
                                 const std::string& canonical_config);

// Best effort: IO failures warn on stderr and are otherwise ignored.
void cache_store(const std::string& dir, const std::string& canonical_config,
                 const Json& record);

}  // namespace srl
