#include "selftrans/dataset.hpp"

#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {

using json = nlohmann::json;

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw DataError(path.string() + ": line " + std::to_string(line) + ": " + what);
}

const json& require_field(const json& obj, const char* name,
                          const std::filesystem::path& path, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) line_error(path, line, std::string("missing field ") + name);
  return *it;
}

std::string str_field(const json& obj, const char* name,
                      const std::filesystem::path& path, std::size_t line) {
  const json& v = require_field(obj, name, path, line);
  if (!v.is_string()) line_error(path, line, std::string("field ") + name + " must be a string");
  return v.get<std::string>();
}

int int_field(const json& obj, const char* name, const std::filesystem::path& path,
              std::size_t line) {
  const json& v = require_field(obj, name, path, line);
  if (!v.is_number_integer())
    line_error(path, line, std::string("field ") + name + " must be an integer");
  return v.get<int>();
}

TaskInstance parse_record(const json& obj, const TaskSchema& schema,
                          const LanguageTag& language,
                          const std::filesystem::path& path, std::size_t line) {
  TaskInstance inst;
  inst.task = schema.name;
  inst.kind = schema.kind;
  inst.language = language;
  inst.task_id = schema.name + "/" + language.code + "/" + std::to_string(line);

  if (schema.name == "xnli") {
    inst.fields.emplace_back("sentence1", str_field(obj, "premise", path, line));
    inst.fields.emplace_back("sentence2", str_field(obj, "hypothesis", path, line));
    int label = int_field(obj, "label", path, line);
    if (label < 0 || label > 2) line_error(path, line, "label must be in {0,1,2}");
    inst.candidates = schema.english_verbalizer;
    inst.gold_index = label;
  } else if (schema.name == "pawsx") {
    inst.fields.emplace_back("sentence1", str_field(obj, "sentence1", path, line));
    inst.fields.emplace_back("sentence2", str_field(obj, "sentence2", path, line));
    int label = int_field(obj, "label", path, line);
    if (label < 0 || label > 1) line_error(path, line, "label must be in {0,1}");
    inst.candidates = schema.english_verbalizer;
    inst.gold_index = label;
  } else if (schema.name == "xcopa") {
    inst.fields.emplace_back("premise", str_field(obj, "premise", path, line));
    std::string question = str_field(obj, "question", path, line);
    if (question != "cause" && question != "effect")
      line_error(path, line, "question must be \"cause\" or \"effect\"");
    inst.fields.emplace_back("question_type", question);
    inst.candidates = {str_field(obj, "choice1", path, line),
                       str_field(obj, "choice2", path, line)};
    int label = int_field(obj, "label", path, line);
    if (label < 0 || label > 1) line_error(path, line, "label must be in {0,1}");
    inst.gold_index = label;
  } else if (schema.name == "xstorycloze") {
    std::string context;
    for (int i = 1; i <= 4; ++i) {
      std::string name = "input_sentence_" + std::to_string(i);
      std::string sent = str_field(obj, name.c_str(), path, line);
      if (!context.empty()) context += " ";
      context += sent;
    }
    inst.fields.emplace_back("context", context);
    inst.candidates = {str_field(obj, "sentence_quiz1", path, line),
                       str_field(obj, "sentence_quiz2", path, line)};
    int right = int_field(obj, "answer_right_ending", path, line);
    if (right != 1 && right != 2)
      line_error(path, line, "answer_right_ending must be 1 or 2");
    inst.gold_index = right - 1;
  } else if (schema.name == "mgsm") {
    inst.fields.emplace_back("question", str_field(obj, "question", path, line));
    const json& ans = require_field(obj, "answer_number", path, line);
    if (ans.is_string())
      inst.gold_answer = ans.get<std::string>();
    else if (ans.is_number())
      inst.gold_answer = ans.dump();
    else
      line_error(path, line, "field answer_number must be a number or string");
  } else {
    line_error(path, line, "no loader for task " + schema.name);
  }

  try {
    inst.validate();
  } catch (const DataError& e) {
    line_error(path, line, e.what());
  }
  return inst;
}

}  // namespace

std::vector<TaskInstance> load_task(const std::filesystem::path& path,
                                    const std::string& task_name,
                                    const LanguageTag& language) {
  const TaskSchema& schema = task_schema(task_name);
  auto lines = read_lines(path);
  std::vector<TaskInstance> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    json obj;
    try {
      obj = json::parse(lines[i]);
    } catch (const json::exception& e) {
      line_error(path, i + 1, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) line_error(path, i + 1, "record must be a JSON object");
    out.push_back(parse_record(obj, schema, language, path, i + 1));
  }
  return out;
}

std::vector<ParallelSentencePair> load_parallel_dev(
    const std::filesystem::path& source_path,
    const std::filesystem::path& english_path, const LanguageTag& language) {
  auto src = read_lines(source_path);
  auto eng = read_lines(english_path);
  // A single trailing empty line is just the final newline.
  while (!src.empty() && src.back().empty()) src.pop_back();
  while (!eng.empty() && eng.back().empty()) eng.pop_back();
  if (src.size() != eng.size())
    throw DataError("parallel split misaligned: " + source_path.string() + " has " +
                    std::to_string(src.size()) + " lines, " + english_path.string() +
                    " has " + std::to_string(eng.size()));
  std::vector<ParallelSentencePair> out;
  out.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (trim(src[i]).empty() || trim(eng[i]).empty())
      throw DataError(source_path.string() + ": line " + std::to_string(i + 1) +
                      ": empty sentence in parallel split");
    out.push_back({src[i], eng[i], language, static_cast<int>(i)});
  }
  return out;
}

std::vector<ParallelSentencePair> load_parallel_dev(const std::filesystem::path& dir,
                                                    const LanguageTag& language) {
  return load_parallel_dev(dir / (language.code + ".dev"), dir / "en.dev", language);
}

ShotSelection select_translation_shots(const std::vector<ParallelSentencePair>& pairs,
                                       int k, int max_chars) {
  if (k < 0) throw DataError("shot count must be >= 0");
  if (max_chars <= 0) throw DataError("max_chars must be > 0");
  ShotSelection sel;
  for (const auto& pair : pairs) {
    if (static_cast<int>(sel.shots.size()) == k) break;
    if (utf8_length(pair.source_text) <= static_cast<std::size_t>(max_chars))
      sel.shots.push_back(pair);
  }
  sel.shortfall = static_cast<int>(sel.shots.size()) < k;
  return sel;
}

std::vector<FewShotExemplar> load_exemplars(const std::filesystem::path& path,
                                            const LanguageTag& language) {
  auto lines = read_lines(path);
  std::vector<FewShotExemplar> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": line " + std::to_string(i + 1) +
                      ": invalid JSON: " + e.what());
    }
    FewShotExemplar ex;
    ex.question = str_field(obj, "question", path, i + 1);
    ex.chain_of_thought_answer = str_field(obj, "answer", path, i + 1);
    ex.language = language;
    bool has_digit = false;
    for (char c : ex.chain_of_thought_answer)
      if (c >= '0' && c <= '9') has_digit = true;
    if (!has_digit)
      throw DataError(path.string() + ": line " + std::to_string(i + 1) +
                      ": exemplar answer has no numeric token");
    out.push_back(std::move(ex));
  }
  if (out.size() != 8)
    throw DataError(path.string() + ": expected exactly 8 exemplars, found " +
                    std::to_string(out.size()));
  return out;
}

}  // namespace selftrans
