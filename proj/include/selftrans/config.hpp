#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace selftrans {

inline constexpr const char* kToolVersion = "0.1.0";

// Effective run configuration. Defaults mirror the method: 4 translation
// shots at a 100-character cutoff, greedy decoding, 8-shot generative
// prompting. Layering is defaults < config file (JSON) < command-line flags.
// The pipeline is deterministic; there is no RNG to seed.
struct RunConfig {
  // backend.*
  std::string backend_url;  // SELFTRANS_BACKEND_URL is the fallback
  std::string model = "model";
  int parallelism = 4;
  int retries = 3;
  int backoff_base_ms = 500;
  // scoring.*
  std::string normalize = "none";  // none|per_token
  // shots.*
  int shots_k = 4;
  int shot_max_chars = 100;
  // translation.*
  int translation_max_new_tokens = 256;
  std::string on_empty = "keep";  // keep|fallback_source
  std::string mt_url;
  // generation.*
  int generation_max_new_tokens = 400;
  // extractor.*
  std::string extractor_pattern;  // empty = built-in default
  // metrics.*
  std::string comet_url;
  // paths.*
  std::filesystem::path data_dir = "data/tasks";
  std::filesystem::path flores_dir = "data/flores_dev";
  std::filesystem::path exemplars_dir = "data/exemplars";
  std::filesystem::path prompts_dir = "data/prompts";
  std::filesystem::path languages_file = "data/languages/resource_classes.txt";
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path out_dir = "out";
  // run selection
  std::string task;
  std::vector<std::string> languages;
  std::string method = "direct";  // direct|self|mt
  // report
  std::vector<std::string> report_inputs;
  std::string format = "md";  // md|csv|md,csv

  void validate() const;  // throws ConfigError
};

// Merges a JSON config file over the defaults. Unknown keys are an error.
RunConfig load_config_file(const RunConfig& base, const std::filesystem::path& path);

// Canonical JSON dump of the effective config (stable key order).
std::string config_to_json(const RunConfig& config);
std::string config_digest(const RunConfig& config);

}  // namespace selftrans
