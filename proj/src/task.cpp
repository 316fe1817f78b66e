#include "selftrans/task.hpp"

#include <algorithm>

#include "selftrans/util.hpp"

namespace selftrans {

std::string to_string(TaskKind k) {
  return k == TaskKind::multiple_choice ? "multiple_choice" : "generative";
}

const std::string& TaskInstance::field(const std::string& name) const {
  for (const auto& [k, v] : fields)
    if (k == name) return v;
  throw DataError(task_id + ": missing field " + name);
}

bool TaskInstance::has_field(const std::string& name) const {
  return std::any_of(fields.begin(), fields.end(),
                     [&](const auto& kv) { return kv.first == name; });
}

void TaskInstance::validate() const {
  if (kind == TaskKind::multiple_choice) {
    if (candidates.size() < 2)
      throw DataError(task_id + ": multiple-choice instance needs >= 2 candidates");
    if (gold_index < 0 || gold_index >= static_cast<int>(candidates.size()))
      throw DataError(task_id + ": gold index " + std::to_string(gold_index) +
                      " out of range for " + std::to_string(candidates.size()) +
                      " candidates");
  } else {
    if (!candidates.empty())
      throw DataError(task_id + ": generative instance must have no candidates");
    if (trim(gold_answer).empty())
      throw DataError(task_id + ": generative instance needs a gold answer");
  }
  for (const auto& [name, value] : fields) {
    if (trim(value).empty())
      throw DataError(task_id + ": field " + name + " is empty");
  }
}

namespace {

std::vector<TaskSchema> make_schemas() {
  std::vector<TaskSchema> s;
  s.push_back({"xnli",
               TaskKind::multiple_choice,
               {"entailment", "neutral", "contradiction"},
               {"Yes", "Also", "No"},
               {"sentence1", "sentence2"},
               false,
               {"ar", "bg", "de", "el", "en", "es", "fr", "hi", "ru", "sw", "th",
                "tr", "ur", "vi", "zh"}});
  s.push_back({"pawsx",
               TaskKind::multiple_choice,
               {"false", "true"},
               {"No", "Yes"},
               {"sentence1", "sentence2"},
               false,
               {"de", "en", "es", "fr", "ja", "ko", "zh"}});
  s.push_back({"xcopa",
               TaskKind::multiple_choice,
               {},
               {},
               {"premise"},
               true,
               {"et", "ht", "id", "it", "qu", "sw", "ta", "th", "tr", "vi", "zh"}});
  s.push_back({"xstorycloze",
               TaskKind::multiple_choice,
               {},
               {},
               {"context"},
               true,
               {"ar", "en", "es", "eu", "hi", "id", "my", "ru", "sw", "te", "zh"}});
  s.push_back({"mgsm",
               TaskKind::generative,
               {},
               {},
               {"question"},
               false,
               {"bn", "de", "en", "es", "fr", "ja", "ru", "sw", "te", "th", "zh"}});
  return s;
}

const std::vector<TaskSchema>& schemas() {
  static const std::vector<TaskSchema> s = make_schemas();
  return s;
}

}  // namespace

const std::vector<std::string>& supported_tasks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : schemas()) out.push_back(s.name);
    return out;
  }();
  return names;
}

const TaskSchema& task_schema(const std::string& task_name) {
  for (const auto& s : schemas())
    if (s.name == task_name) return s;
  std::string msg = "unknown task \"" + task_name + "\"; supported tasks:";
  for (const auto& n : supported_tasks()) msg += " " + n;
  throw DataError(msg);
}

}  // namespace selftrans
