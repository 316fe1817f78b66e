#pragma once

#include <string>
#include <vector>

#include "selftrans/language.hpp"

namespace selftrans {

enum class TaskKind { multiple_choice, generative };

std::string to_string(TaskKind k);

// One evaluation item in the uniform instance model.
struct TaskInstance {
  std::string task_id;   // "<task>/<lang>/<line-number>"
  std::string task;      // canonical task name
  TaskKind kind = TaskKind::multiple_choice;
  LanguageTag language;
  // Named text fields in schema order (plus control fields like question_type).
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> candidates;  // empty for generative tasks
  int gold_index = -1;                  // multiple_choice
  std::string gold_answer;              // generative

  const std::string& field(const std::string& name) const;  // throws if absent
  bool has_field(const std::string& name) const;
  void validate() const;
};

// Static description of a supported task: its record schema, label space and
// which fields the translation step must cover.
struct TaskSchema {
  std::string name;
  TaskKind kind = TaskKind::multiple_choice;
  // Label names in index order (XNLI: entailment/neutral/contradiction).
  std::vector<std::string> label_names;
  // Canonical English verbalizer words in label order, empty for identity/none.
  std::vector<std::string> english_verbalizer;
  // Instance fields the translation step covers, in order.
  std::vector<std::string> translatable_fields;
  bool translate_candidates = false;
  // Dataset's canonical language column order for reports.
  std::vector<std::string> language_order;
};

const TaskSchema& task_schema(const std::string& task_name);  // throws, listing tasks
const std::vector<std::string>& supported_tasks();

// A solved example for the generative few-shot prompt.
struct FewShotExemplar {
  std::string question;
  std::string chain_of_thought_answer;
  LanguageTag language;
};

// One aligned sentence pair from the parallel development split.
struct ParallelSentencePair {
  std::string source_text;
  std::string english_text;
  LanguageTag language;
  int position = 0;  // 0-based index in the split
};

}  // namespace selftrans
