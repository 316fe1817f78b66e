#pragma once

#include <filesystem>
#include <vector>

#include "selftrans/task.hpp"

namespace selftrans {

// Loads one task dataset (one JSON object per line in the task's schema).
// Instances come back in file order with task_id "<task>/<lang>/<line>".
std::vector<TaskInstance> load_task(const std::filesystem::path& path,
                                    const std::string& task_name,
                                    const LanguageTag& language);

// Loads an aligned development split from two one-sentence-per-line files.
std::vector<ParallelSentencePair> load_parallel_dev(
    const std::filesystem::path& source_path,
    const std::filesystem::path& english_path, const LanguageTag& language);

// Convenience: "<dir>/<code>.dev" + "<dir>/en.dev".
std::vector<ParallelSentencePair> load_parallel_dev(
    const std::filesystem::path& dir, const LanguageTag& language);

struct ShotSelection {
  std::vector<ParallelSentencePair> shots;
  bool shortfall = false;  // fewer than k available after the length filter
};

// First k pairs, in position order, whose source text is at most max_chars
// Unicode scalar values long.
ShotSelection select_translation_shots(const std::vector<ParallelSentencePair>& pairs,
                                       int k, int max_chars);

// Loads the per-language few-shot exemplar file (JSONL {question, answer}).
// Exactly eight exemplars are required.
std::vector<FewShotExemplar> load_exemplars(const std::filesystem::path& path,
                                            const LanguageTag& language);

}  // namespace selftrans
