#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "selftrans/inference.hpp"

namespace selftrans {

// "<task>.<lang>.<method>.<model>.results.jsonl"
std::string results_filename(const std::string& task, const std::string& lang,
                             Method method, const std::string& model);

std::string result_record_to_json_line(const ResultRecord& record);
ResultRecord result_record_from_json_line(const std::string& line,
                                          const std::string& where);

// Streams records to "<path>.tmp" then renames, so readers only ever see a
// complete file.
void write_results_file(const std::filesystem::path& path,
                        const std::vector<ResultRecord>& records);

std::vector<ResultRecord> read_results_file(const std::filesystem::path& path);

// Everything that pins down a run: the effective config, its digest, the
// prompt template fingerprints and the translation shot positions.
struct RunManifest {
  std::string tool_version;
  std::string config_digest;
  std::string effective_config_json;                    // canonical dump
  std::map<std::string, std::string> prompt_fingerprints;  // "task.lang" -> digest
  std::map<std::string, std::vector<int>> shot_positions;  // lang -> positions
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace selftrans
