#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "demachar/sha256.hpp"

namespace demachar {

/// Content-addressed result cache: one file per result, filename = SHA-256
/// hex digest of the canonical request string, contents = the exact bytes
/// that were (or would be) written to standard output.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Directory from DEMACHAR_CACHE, falling back to ./.demachar-cache.
  static ResultCache from_environment() {
    if (const char* env = std::getenv("DEMACHAR_CACHE"); env && *env)
      return ResultCache(std::filesystem::path(env));
    return ResultCache(std::filesystem::path(".demachar-cache"));
  }

  const std::filesystem::path& directory() const { return dir_; }

  std::optional<std::string> get(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return bytes;
  }

  void put(const std::string& key, const std::string& bytes) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;  // caching is best effort
    std::filesystem::path final_path = path_for(key);
    std::filesystem::path tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) return;
    }
    std::filesystem::rename(tmp, final_path, ec);
  }

 private:
  std::filesystem::path path_for(const std::string& key) const {
    return dir_ / (Sha256::digest(key) + ".json");
  }

  std::filesystem::path dir_;
};

}  // namespace demachar
