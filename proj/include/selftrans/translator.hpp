#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "selftrans/backend.hpp"
#include "selftrans/cache.hpp"
#include "selftrans/http_backend.hpp"
#include "selftrans/task.hpp"

namespace selftrans {

enum class TranslatorKind { identity, self_model, external_mt };

std::string to_string(TranslatorKind k);

struct TranslationOptions {
  int max_new_tokens = 256;
  enum class OnEmpty { keep, fallback_source };
  // Empty model output stays empty (and flagged) by default; replacing it
  // with the source text would leak source-language text into the English
  // prompt, so that behavior is opt-in.
  OnEmpty on_empty = OnEmpty::keep;
  // Escape hatch for harnesses that run the identity translator over
  // non-English inputs.
  bool allow_identity_nonenglish = false;
};

struct FieldTranslation {
  std::string text;
  bool empty_output = false;
  std::string cache_key;  // empty for the identity translator
  bool fresh = false;     // computed by this call rather than served from cache
};

// An instance with every translatable field rendered into English. Candidates
// are translated only for identity-verbalizer tasks; XNLI/PAWS-X candidates
// stay the untouched verbalizer outputs.
struct TranslatedInstance {
  TaskInstance original;
  std::vector<std::pair<std::string, std::string>> english_fields;
  std::vector<std::string> english_candidates;
  TranslatorKind provenance = TranslatorKind::identity;
  std::vector<std::string> cache_keys;

  // The original instance with translatable fields and candidates swapped
  // for their English versions; control fields are carried over.
  TaskInstance to_english_instance() const;
};

struct TranslateSummary {
  long fresh = 0;
  long cached = 0;
  long empty = 0;
};

// Translates fields of one source language into English, through the model
// itself (few-shot prompt), an external MT endpoint, or the identity map.
// self_model and external_mt results go through the persistent cache.
class Translator {
 public:
  Translator(TranslatorKind kind, LanguageTag source_language, Backend* backend,
             MtClient* mt, TranslationCache* cache, std::string model_id,
             std::vector<ParallelSentencePair> shots, TranslationOptions options);

  FieldTranslation translate_field(const std::string& text);
  TranslatedInstance translate_instance(const TaskInstance& instance);

  // Batched translation of every pending field across the instances, then
  // cache-backed assembly. Responses are deterministic for any parallelism.
  std::vector<TranslatedInstance> translate_all(const std::vector<TaskInstance>& instances,
                                                int parallelism);

  TranslatorKind kind() const { return kind_; }
  const std::string& prompt_fingerprint() const { return prompt_fingerprint_; }
  std::vector<int> shot_positions() const;
  const TranslateSummary& last_summary() const { return summary_; }
  std::string decode_params() const;

 private:
  std::string key_for(const std::string& text) const;
  FieldTranslation compute_fresh(const std::string& text);
  FieldTranslation from_record(const TranslationRecord& record, bool fresh) const;
  TranslatedInstance translate_instance_impl(const TaskInstance& instance,
                                             const std::set<std::string>* fresh_keys);

  TranslatorKind kind_;
  LanguageTag lang_;
  Backend* backend_;
  MtClient* mt_;
  TranslationCache* cache_;
  std::string model_id_;
  std::vector<ParallelSentencePair> shots_;
  TranslationOptions options_;
  std::string prompt_fingerprint_;
  TranslateSummary summary_;
};

}  // namespace selftrans
