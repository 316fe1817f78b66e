#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "selftrans/task.hpp"

namespace selftrans {

enum class VerbalizerKind { map, identity, none };

// A task's rendering rule, parsed from a registry file.
struct PromptTemplate {
  std::string task;
  std::string language_code;
  VerbalizerKind verbalizer_kind = VerbalizerKind::identity;
  // label -> word, ordered by the task schema's label index order.
  std::vector<std::pair<std::string, std::string>> verbalizer;
  // When set, the value of this instance field picks the sub-template.
  std::string variant_selector;
  std::map<std::string, std::string> variants;
  std::string text;  // single template when there are no variants
  std::string fingerprint;  // digest of the source file

  const std::string& template_for(const TaskInstance& instance) const;
};

// A candidate continuation split at the mask, ready for scoring.
struct RenderedChoice {
  std::string context;       // everything before the mask
  std::string continuation;  // verbalized candidate plus the template tail
};

struct TranslationPrompt {
  std::vector<std::pair<std::string, std::string>> shots;  // (source, english)
  std::string query_source;
  std::string rendered;
  std::string stop_sequence;
};

std::vector<RenderedChoice> render_choices(const TaskInstance& instance,
                                           const PromptTemplate& tmpl);

std::string render_generative(const TaskInstance& instance, const PromptTemplate& tmpl,
                              const std::vector<FewShotExemplar>& exemplars);

TranslationPrompt build_translation_prompt(const std::vector<ParallelSentencePair>& shots,
                                           const std::string& query,
                                           const LanguageTag& language);

// Loads "<task>.<lang>.prompt" files from a directory. Lookups never fall
// back to another language.
class PromptRegistry {
 public:
  static PromptRegistry load(const std::filesystem::path& dir);
  static PromptTemplate parse_file(const std::filesystem::path& path,
                                   const std::string& task, const std::string& lang);

  const PromptTemplate& get(const std::string& task, const std::string& lang_code) const;
  bool has(const std::string& task, const std::string& lang_code) const;
  std::size_t size() const { return templates_.size(); }

  void add(PromptTemplate tmpl);

 private:
  std::map<std::pair<std::string, std::string>, PromptTemplate> templates_;
};

}  // namespace selftrans
