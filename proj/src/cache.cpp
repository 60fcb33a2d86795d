#include "srl/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace srl {

namespace {

namespace fs = std::filesystem;

std::string keyed_text(const std::string& canonical_config) {
  return std::string(kCodeVersion) + "\n" + canonical_config;
}

fs::path entry_path(const std::string& dir,
                    const std::string& canonical_config) {
  return fs::path(dir) / (cache_key(canonical_config) + ".json");
}

void warn(const std::string& message) {
  std::cerr << "srl: cache: " << message << "\n";
}

}  // namespace

std::string cache_key(const std::string& canonical_config) {
  // FNV-1a over version + config.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : keyed_text(canonical_config))
    h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::optional<Json> cache_lookup(const std::string& dir,
                                 const std::string& canonical_config) {
  const fs::path path = entry_path(dir, canonical_config);
  std::error_code ec;
  if (!fs::exists(path, ec) || ec) return std::nullopt;
  std::ifstream in(path);
  if (!in) {
    warn("cannot read " + path.string() + "; recomputing");
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json entry;
  try {
    entry = Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    warn("corrupt entry " + path.string() + " (" + e.what() +
         "); recomputing");
    return std::nullopt;
  }
  if (!entry.is_object() || !entry.contains("version") ||
      !entry.contains("config") || !entry.contains("record") ||
      entry["version"] != kCodeVersion ||
      entry["config"] != canonical_config || !entry["record"].is_object()) {
    warn("stale or mismatched entry " + path.string() + "; recomputing");
    return std::nullopt;
  }
  return entry["record"];
}

void cache_store(const std::string& dir, const std::string& canonical_config,
                 const Json& record) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    warn("cannot create " + dir + ": " + ec.message());
    return;
  }
  Json entry = Json::object();
  entry["version"] = kCodeVersion;
  entry["config"] = canonical_config;
  entry["record"] = record;
  const fs::path path = entry_path(dir, canonical_config);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      warn("cannot write " + tmp.string());
      return;
    }
    out << entry.dump(2) << "\n";
  }
  fs::rename(tmp, path, ec);
  if (ec) warn("cannot move entry into place: " + ec.message());
}

}  // namespace srl
