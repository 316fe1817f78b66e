#include "selftrans/translator.hpp"

#include <algorithm>

#include "selftrans/prompt.hpp"
#include "selftrans/util.hpp"

namespace selftrans {

std::string to_string(TranslatorKind k) {
  switch (k) {
    case TranslatorKind::identity: return "identity";
    case TranslatorKind::self_model: return "self_model";
    case TranslatorKind::external_mt: return "external_mt";
  }
  return "?";
}

TaskInstance TranslatedInstance::to_english_instance() const {
  TaskInstance out = original;
  for (auto& [name, value] : out.fields) {
    for (const auto& [tname, tvalue] : english_fields) {
      if (tname == name) {
        value = tvalue;
        break;
      }
    }
  }
  out.candidates = english_candidates;
  return out;
}

Translator::Translator(TranslatorKind kind, LanguageTag source_language, Backend* backend,
                       MtClient* mt, TranslationCache* cache, std::string model_id,
                       std::vector<ParallelSentencePair> shots, TranslationOptions options)
    : kind_(kind),
      lang_(std::move(source_language)),
      backend_(backend),
      mt_(mt),
      cache_(cache),
      model_id_(std::move(model_id)),
      shots_(std::move(shots)),
      options_(options) {
  if (kind_ == TranslatorKind::self_model) {
    if (!backend_) throw ConfigError("self-translation needs a backend");
    if (!cache_) throw ConfigError("self-translation needs a cache");
    std::string src = "layout=v1;lang=" + lang_.display_name;
    for (const auto& shot : shots_)
      src += ";" + std::to_string(shot.position) + ":" + shot.source_text + "=>" +
             shot.english_text;
    prompt_fingerprint_ = sha256_hex(src);
  } else if (kind_ == TranslatorKind::external_mt) {
    if (!mt_) throw ConfigError("external MT translation needs an MT endpoint");
    if (!cache_) throw ConfigError("external MT translation needs a cache");
    prompt_fingerprint_ = "external-mt/v1";
  }
}

std::string Translator::decode_params() const {
  if (kind_ == TranslatorKind::external_mt) return "mt";
  return "greedy;stop=\\n;max_new_tokens=" + std::to_string(options_.max_new_tokens);
}

std::vector<int> Translator::shot_positions() const {
  std::vector<int> out;
  out.reserve(shots_.size());
  for (const auto& s : shots_) out.push_back(s.position);
  return out;
}

std::string Translator::key_for(const std::string& text) const {
  return TranslationCache::make_key(model_id_, lang_.code, text, prompt_fingerprint_,
                                    decode_params());
}

FieldTranslation Translator::from_record(const TranslationRecord& record, bool fresh) const {
  FieldTranslation ft;
  ft.cache_key = record.key;
  ft.empty_output = record.empty_output;
  ft.fresh = fresh;
  if (record.empty_output && options_.on_empty == TranslationOptions::OnEmpty::fallback_source)
    ft.text = record.source_text;
  else
    ft.text = record.english_text;
  return ft;
}

FieldTranslation Translator::compute_fresh(const std::string& text) {
  std::string english;
  if (kind_ == TranslatorKind::self_model) {
    TranslationPrompt prompt = build_translation_prompt(shots_, text, lang_);
    CompletionSpec spec{prompt.rendered, options_.max_new_tokens, prompt.stop_sequence};
    english = trim(backend_->complete(spec).text);
  } else {
    english = trim(mt_->translate(text, lang_.code, "en"));
  }
  TranslationRecord record;
  record.key = key_for(text);
  record.model = model_id_;
  record.lang = lang_.code;
  record.source_text = text;
  record.english_text = english;
  record.empty_output = english.empty();
  record.created_at = iso8601_utc_now();
  cache_->put(record);
  return from_record(record, true);
}

FieldTranslation Translator::translate_field(const std::string& text) {
  if (text.empty()) throw DataError("cannot translate an empty field");
  if (kind_ == TranslatorKind::identity) {
    if (lang_.code != "en" && !options_.allow_identity_nonenglish)
      throw ConfigError("identity translator is only valid for English inputs");
    return {text, false, "", false};
  }
  std::string key = key_for(text);
  if (auto hit = cache_->get(key)) return from_record(*hit, false);
  return compute_fresh(text);
}

TranslatedInstance Translator::translate_instance_impl(
    const TaskInstance& instance, const std::set<std::string>* fresh_keys) {
  const TaskSchema& schema = task_schema(instance.task);
  TranslatedInstance out;
  out.original = instance;
  out.provenance = kind_;

  // One summary entry per field occurrence, duplicates included.
  auto track = [&](const FieldTranslation& ft) {
    if (!ft.cache_key.empty()) out.cache_keys.push_back(ft.cache_key);
    if (kind_ != TranslatorKind::identity) {
      bool fresh = ft.fresh || (fresh_keys && fresh_keys->count(ft.cache_key));
      if (fresh)
        ++summary_.fresh;
      else
        ++summary_.cached;
    }
    if (ft.empty_output) ++summary_.empty;
  };

  for (const auto& name : schema.translatable_fields) {
    FieldTranslation ft = translate_field(instance.field(name));
    track(ft);
    out.english_fields.emplace_back(name, ft.text);
  }
  if (schema.translate_candidates) {
    for (const auto& candidate : instance.candidates) {
      FieldTranslation ft = translate_field(candidate);
      track(ft);
      out.english_candidates.push_back(ft.text);
    }
  } else {
    out.english_candidates = instance.candidates;
  }
  return out;
}

TranslatedInstance Translator::translate_instance(const TaskInstance& instance) {
  return translate_instance_impl(instance, nullptr);
}

std::vector<TranslatedInstance> Translator::translate_all(
    const std::vector<TaskInstance>& instances, int parallelism) {
  summary_ = {};
  std::set<std::string> fresh_keys;
  if (kind_ != TranslatorKind::identity) {
    // Gather the texts that still need a backend call, first-seen order.
    std::vector<std::string> pending;
    std::set<std::string> seen_keys;
    auto consider = [&](const std::string& text) {
      std::string key = key_for(text);
      if (seen_keys.count(key) || cache_->get(key)) return;
      seen_keys.insert(key);
      pending.push_back(text);
    };
    for (const auto& inst : instances) {
      const TaskSchema& schema = task_schema(inst.task);
      for (const auto& name : schema.translatable_fields) consider(inst.field(name));
      if (schema.translate_candidates)
        for (const auto& c : inst.candidates) consider(c);
    }
    std::vector<FieldTranslation> results(pending.size());
    ordered_parallel_for(pending.size(), parallelism,
                         [&](std::size_t i) { results[i] = compute_fresh(pending[i]); });
    for (const auto& ft : results) fresh_keys.insert(ft.cache_key);
  }
  std::vector<TranslatedInstance> out;
  out.reserve(instances.size());
  for (const auto& inst : instances)
    out.push_back(translate_instance_impl(inst, &fresh_keys));
  return out;
}

}  // namespace selftrans
