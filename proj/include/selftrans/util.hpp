#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace selftrans {

// Thrown for malformed input data, broken invariants, or missing lookups.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for bad configuration or usage; the CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Number of Unicode scalar values in a UTF-8 string (continuation bytes
// are not counted; invalid bytes count as one scalar each).
std::size_t utf8_length(std::string_view s);

std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes via a temp file in the same directory, then renames into place.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Matches '*' wildcards within a single path component pattern.
bool glob_match(std::string_view pattern, std::string_view name);
// Expands a pattern whose final component may contain '*'.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

std::string iso8601_utc_now();

// Fixed-point formatting with one decimal, round-half-away-from-zero,
// used everywhere a report prints a value.
std::string format_rounded(double value, int decimals = 1);

// Runs fn(i) for i in [0, n) on up to `parallelism` threads. The first
// exception aborts remaining work and is rethrown after all threads join.
void ordered_parallel_for(std::size_t n, int parallelism,
                          const std::function<void(std::size_t)>& fn);

}  // namespace selftrans
