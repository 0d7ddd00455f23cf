#pragma once

// On-disk cache of solve tables, one file per (k, s, format version).

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <system_error>

#include "picaria/board.hpp"
#include "picaria/solver.hpp"
#include "picaria/table_io.hpp"

namespace picaria {

inline constexpr const char* kCacheDirEnv = "PICARIA_CACHE_DIR";

// --cache wins over the environment; no directory means no caching.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, int k, int s) {
  return dir / ("picaria-k" + std::to_string(k) + "-s" + std::to_string(s) + "-v" +
                std::to_string(kTableFormatVersion) + ".table");
}

struct CachedTable {
  SolveTable table;
  bool from_cache = false;
  std::string note;  // set when a cache file was present but unusable
};

// Loads the table from the cache when a valid file exists, otherwise solves
// and (re)writes the cache file.
inline CachedTable load_or_solve(const BoardSpec& spec, const std::optional<std::filesystem::path>& dir) {
  std::string note;
  if (dir) {
    const auto path = cache_file(*dir, spec.k(), spec.s());
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
      try {
        return {import_table(path, spec), true, {}};
      } catch (const Error& e) {
        note = "ignored cache file " + path.string() + ": " + e.what();
      }
    }
  }
  SolveTable table = solve(spec);
  if (dir) {
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    const auto path = cache_file(*dir, spec.k(), spec.s());
    const auto tmp = path.string() + ".tmp";
    try {
      export_table(table, std::filesystem::path(tmp));
      std::filesystem::rename(tmp, path);
    } catch (const std::exception& e) {
      note += (note.empty() ? "" : "; ") + std::string("could not write cache: ") + e.what();
    }
  }
  return {std::move(table), false, note};
}

}  // namespace picaria
