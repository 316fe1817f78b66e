#include "selftrans/results_io.hpp"

#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string results_filename(const std::string& task, const std::string& lang,
                             Method method, const std::string& model) {
  return task + "." + lang + "." + method_file_token(method) + "." + model +
         ".results.jsonl";
}

std::string result_record_to_json_line(const ResultRecord& r) {
  ordered_json obj;
  obj["task_id"] = r.task_id;
  obj["task"] = r.task;
  obj["language"] = r.language;
  obj["method"] = to_string(r.method);
  obj["model"] = r.model;
  obj["kind"] = to_string(r.kind);
  if (r.kind == TaskKind::multiple_choice) {
    obj["prediction"] = r.prediction_index;
    obj["gold"] = r.gold_index;
  } else {
    obj["prediction"] = r.prediction_answer;
    obj["gold"] = r.gold_answer;
  }
  obj["correct"] = r.correct;
  obj["candidate_scores"] = r.candidate_scores;
  obj["generation"] = r.generation;
  obj["translations_used"] = r.translations_used;
  return obj.dump();
}

ResultRecord result_record_from_json_line(const std::string& line,
                                          const std::string& where) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw DataError(where + ": invalid result record: " + e.what());
  }
  ResultRecord r;
  try {
    r.task_id = obj.at("task_id").get<std::string>();
    r.task = obj.at("task").get<std::string>();
    r.language = obj.at("language").get<std::string>();
    r.method = method_from_string(obj.at("method").get<std::string>());
    r.model = obj.value("model", "");
    std::string kind = obj.at("kind").get<std::string>();
    r.kind = kind == "generative" ? TaskKind::generative : TaskKind::multiple_choice;
    if (r.kind == TaskKind::multiple_choice) {
      r.prediction_index = obj.at("prediction").get<int>();
      r.gold_index = obj.at("gold").get<int>();
    } else {
      r.prediction_answer = obj.at("prediction").get<std::string>();
      r.gold_answer = obj.at("gold").get<std::string>();
    }
    r.correct = obj.at("correct").get<bool>();
    r.candidate_scores = obj.value("candidate_scores", std::vector<double>{});
    r.generation = obj.value("generation", "");
    r.translations_used = obj.value("translations_used", std::vector<std::string>{});
  } catch (const ordered_json::exception& e) {
    throw DataError(where + ": invalid result record: " + e.what());
  }
  return r;
}

void write_results_file(const std::filesystem::path& path,
                        const std::vector<ResultRecord>& records) {
  std::string content;
  for (const auto& r : records) {
    content += result_record_to_json_line(r);
    content += "\n";
  }
  atomic_write_file(path, content);
}

std::vector<ResultRecord> read_results_file(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  std::vector<ResultRecord> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    out.push_back(result_record_from_json_line(
        lines[i], path.string() + ": line " + std::to_string(i + 1)));
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  ordered_json obj;
  obj["tool_version"] = manifest.tool_version;
  obj["config_digest"] = manifest.config_digest;
  obj["effective_config"] = ordered_json::parse(manifest.effective_config_json);
  ordered_json fps = ordered_json::object();
  for (const auto& [k, v] : manifest.prompt_fingerprints) fps[k] = v;
  obj["prompt_fingerprints"] = fps;
  ordered_json shots = ordered_json::object();
  for (const auto& [k, v] : manifest.shot_positions) shots[k] = v;
  obj["shot_positions"] = shots;
  atomic_write_file(path, obj.dump(2) + "\n");
}

}  // namespace selftrans
