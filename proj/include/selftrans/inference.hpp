#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selftrans/backend.hpp"
#include "selftrans/extractor.hpp"
#include "selftrans/prompt.hpp"
#include "selftrans/task.hpp"
#include "selftrans/translator.hpp"

namespace selftrans {

enum class Method { direct, self_translate, external_mt };

std::string to_string(Method m);
Method method_from_string(const std::string& s);  // accepts direct|self|mt aliases
std::string method_file_token(Method m);          // direct|self|mt

struct ScoringOptions {
  enum class Normalize { none, per_token };
  Normalize normalize = Normalize::none;
};

struct GenerationOptions {
  int max_new_tokens = 400;
  std::string stop = "\n\n";  // exemplar block boundary
};

// Per-instance prediction with provenance.
struct ResultRecord {
  std::string task_id;
  std::string task;
  std::string language;
  Method method = Method::direct;
  std::string model;
  TaskKind kind = TaskKind::multiple_choice;
  int prediction_index = -1;      // multiple_choice
  std::string prediction_answer;  // generative, normalized extraction
  int gold_index = -1;
  std::string gold_answer;
  bool correct = false;
  std::vector<double> candidate_scores;  // multiple_choice, one per candidate
  std::string generation;               // generative raw output
  std::vector<std::string> translations_used;
};

// Scores every rendered candidate and takes the argmax; ties go to the
// lowest candidate index.
ResultRecord infer_multiple_choice(const TaskInstance& instance, Method method,
                                   const PromptTemplate& tmpl, Backend& backend,
                                   const ScoringOptions& scoring);

ResultRecord infer_generative(const TaskInstance& instance, Method method,
                              const PromptTemplate& tmpl,
                              const std::vector<FewShotExemplar>& exemplars,
                              Backend& backend, const AnswerExtractor& extractor,
                              const GenerationOptions& generation);

struct EvalOptions {
  ScoringOptions scoring;
  GenerationOptions generation;
  AnswerExtractor extractor{};
  int parallelism = 1;
  std::string model;
};

// Runs one method over instances that share a task and language. For the
// translation methods the translator is consulted (cache-aware) before any
// scoring happens. Records come back in input order.
std::vector<ResultRecord> run_evaluation(const std::vector<TaskInstance>& instances,
                                         Method method, const PromptRegistry& prompts,
                                         Backend& backend, Translator* translator,
                                         const std::vector<FewShotExemplar>* exemplars,
                                         const EvalOptions& options);

}  // namespace selftrans
