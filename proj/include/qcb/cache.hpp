#pragma once

// On-disk cache of rendered command output, one file per key.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

namespace qcb {

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct CachedResult {
  std::string output;
  int status = 0;
};

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// `key` is the full description of the request; its hash names the file
  /// and the text itself is stored in the header and compared on lookup.
  std::optional<CachedResult> lookup(const std::string& key) const {
    std::ifstream in(file_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      const auto j = nlohmann::json::parse(ss.str());
      if (j.at("header").at("key").get<std::string>() != key) return std::nullopt;
      return CachedResult{j.at("output").get<std::string>(), j.at("header").at("status").get<int>()};
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
  }

  void store(const std::string& key, const CachedResult& r) const {
    std::filesystem::create_directories(dir_);
    nlohmann::ordered_json j{{"header", {{"key", key}, {"status", r.status}}}, {"output", r.output}};
    const auto target = file_for(key);
    const auto tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << j.dump(1);
    }
    std::filesystem::rename(tmp, target);
  }

  std::filesystem::path file_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
    return dir_ / name;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace qcb
