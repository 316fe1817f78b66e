#include "selftrans/config.hpp"

#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {
using ordered_json = nlohmann::ordered_json;

void apply_section(const ordered_json& section, const std::string& name, RunConfig& c) {
  for (const auto& [key, value] : section.items()) {
    const std::string full = name + "." + key;
    try {
      if (full == "backend.url") c.backend_url = value.get<std::string>();
      else if (full == "backend.model") c.model = value.get<std::string>();
      else if (full == "backend.parallelism") c.parallelism = value.get<int>();
      else if (full == "backend.retries") c.retries = value.get<int>();
      else if (full == "backend.backoff_base_ms") c.backoff_base_ms = value.get<int>();
      else if (full == "scoring.normalize") c.normalize = value.get<std::string>();
      else if (full == "shots.k") c.shots_k = value.get<int>();
      else if (full == "shots.max_chars") c.shot_max_chars = value.get<int>();
      else if (full == "translation.max_new_tokens")
        c.translation_max_new_tokens = value.get<int>();
      else if (full == "translation.on_empty") c.on_empty = value.get<std::string>();
      else if (full == "translation.mt_url") c.mt_url = value.get<std::string>();
      else if (full == "generation.max_new_tokens")
        c.generation_max_new_tokens = value.get<int>();
      else if (full == "extractor.pattern") c.extractor_pattern = value.get<std::string>();
      else if (full == "metrics.comet_url") c.comet_url = value.get<std::string>();
      else if (full == "paths.data_dir") c.data_dir = value.get<std::string>();
      else if (full == "paths.flores_dir") c.flores_dir = value.get<std::string>();
      else if (full == "paths.exemplars_dir") c.exemplars_dir = value.get<std::string>();
      else if (full == "paths.prompts_dir") c.prompts_dir = value.get<std::string>();
      else if (full == "paths.languages_file") c.languages_file = value.get<std::string>();
      else if (full == "paths.cache_dir") c.cache_dir = value.get<std::string>();
      else if (full == "paths.out_dir") c.out_dir = value.get<std::string>();
      else if (full == "run.task") c.task = value.get<std::string>();
      else if (full == "run.languages") c.languages = value.get<std::vector<std::string>>();
      else if (full == "run.method") c.method = value.get<std::string>();
      else if (full == "report.inputs")
        c.report_inputs = value.get<std::vector<std::string>>();
      else if (full == "report.format") c.format = value.get<std::string>();
      else throw ConfigError("unknown config key \"" + full + "\"");
    } catch (const ordered_json::exception& e) {
      throw ConfigError("bad value for config key \"" + full + "\": " + e.what());
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (parallelism < 1) throw ConfigError("backend.parallelism must be >= 1");
  if (retries < 1) throw ConfigError("backend.retries must be >= 1");
  if (normalize != "none" && normalize != "per_token")
    throw ConfigError("scoring.normalize must be none or per_token");
  if (on_empty != "keep" && on_empty != "fallback_source")
    throw ConfigError("translation.on_empty must be keep or fallback_source");
  if (shots_k < 0) throw ConfigError("shots.k must be >= 0");
  if (shot_max_chars < 1) throw ConfigError("shots.max_chars must be >= 1");
  if (translation_max_new_tokens < 1 || generation_max_new_tokens < 1)
    throw ConfigError("max_new_tokens settings must be >= 1");
  if (format != "md" && format != "csv" && format != "md,csv" && format != "csv,md")
    throw ConfigError("report format must be md, csv, or md,csv");
}

RunConfig load_config_file(const RunConfig& base, const std::filesystem::path& path) {
  RunConfig c = base;
  ordered_json root;
  try {
    root = ordered_json::parse(read_file(path));
  } catch (const ordered_json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!root.is_object()) throw ConfigError(path.string() + ": config must be an object");
  for (const auto& [section, body] : root.items()) {
    if (!body.is_object())
      throw ConfigError(path.string() + ": section \"" + section + "\" must be an object");
    apply_section(body, section, c);
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  ordered_json root;
  root["backend"] = {{"url", c.backend_url},
                     {"model", c.model},
                     {"parallelism", c.parallelism},
                     {"retries", c.retries},
                     {"backoff_base_ms", c.backoff_base_ms}};
  root["scoring"] = {{"normalize", c.normalize}};
  root["shots"] = {{"k", c.shots_k}, {"max_chars", c.shot_max_chars}};
  root["translation"] = {{"max_new_tokens", c.translation_max_new_tokens},
                         {"on_empty", c.on_empty},
                         {"mt_url", c.mt_url}};
  root["generation"] = {{"max_new_tokens", c.generation_max_new_tokens}};
  root["extractor"] = {{"pattern", c.extractor_pattern}};
  root["metrics"] = {{"comet_url", c.comet_url}};
  root["paths"] = {{"data_dir", c.data_dir.string()},
                   {"flores_dir", c.flores_dir.string()},
                   {"exemplars_dir", c.exemplars_dir.string()},
                   {"prompts_dir", c.prompts_dir.string()},
                   {"languages_file", c.languages_file.string()},
                   {"cache_dir", c.cache_dir.string()},
                   {"out_dir", c.out_dir.string()}};
  root["run"] = {{"task", c.task}, {"languages", c.languages}, {"method", c.method}};
  root["report"] = {{"inputs", c.report_inputs}, {"format", c.format}};
  return root.dump(2);
}

std::string config_digest(const RunConfig& c) { return sha256_hex(config_to_json(c)); }

}  // namespace selftrans
