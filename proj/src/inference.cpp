#include "selftrans/inference.hpp"

#include <algorithm>
#include <cmath>

#include "selftrans/util.hpp"

namespace selftrans {

std::string to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::self_translate: return "self_translate";
    case Method::external_mt: return "external_mt";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "direct") return Method::direct;
  if (s == "self" || s == "self_translate") return Method::self_translate;
  if (s == "mt" || s == "external_mt") return Method::external_mt;
  throw ConfigError("unknown method \"" + s + "\" (expected direct|self|mt)");
}

std::string method_file_token(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::self_translate: return "self";
    case Method::external_mt: return "mt";
  }
  return "?";
}

namespace {

ResultRecord base_record(const TaskInstance& instance, Method method) {
  ResultRecord r;
  r.task_id = instance.task_id;
  r.task = instance.task;
  r.language = instance.language.code;
  r.method = method;
  r.kind = instance.kind;
  r.gold_index = instance.gold_index;
  r.gold_answer = instance.gold_answer;
  return r;
}

int argmax_lowest_tie(const std::vector<double>& scores) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace

ResultRecord infer_multiple_choice(const TaskInstance& instance, Method method,
                                   const PromptTemplate& tmpl, Backend& backend,
                                   const ScoringOptions& scoring) {
  if (instance.kind != TaskKind::multiple_choice)
    throw DataError(instance.task_id + ": not a multiple-choice instance");
  auto choices = render_choices(instance, tmpl);
  ResultRecord r = base_record(instance, method);
  r.candidate_scores.reserve(choices.size());
  for (const auto& choice : choices) {
    Score s = backend.score({choice.context, choice.continuation});
    double value = s.total_logprob;
    if (scoring.normalize == ScoringOptions::Normalize::per_token)
      value /= std::max(1, s.token_count);
    if (!std::isfinite(value))
      throw DataError(instance.task_id + ": non-finite candidate score");
    r.candidate_scores.push_back(value);
  }
  r.prediction_index = argmax_lowest_tie(r.candidate_scores);
  r.correct = r.prediction_index == r.gold_index;
  return r;
}

ResultRecord infer_generative(const TaskInstance& instance, Method method,
                              const PromptTemplate& tmpl,
                              const std::vector<FewShotExemplar>& exemplars,
                              Backend& backend, const AnswerExtractor& extractor,
                              const GenerationOptions& generation) {
  if (instance.kind != TaskKind::generative)
    throw DataError(instance.task_id + ": not a generative instance");
  std::string prompt = render_generative(instance, tmpl, exemplars);
  Completion completion =
      backend.complete({prompt, generation.max_new_tokens, generation.stop});
  ResultRecord r = base_record(instance, method);
  r.generation = completion.text;
  r.prediction_answer = extractor.extract(completion.text);
  // A generation without any numeric token is an incorrect prediction, not
  // an error.
  r.correct = AnswerExtractor::answers_equal(r.prediction_answer, r.gold_answer);
  return r;
}

std::vector<ResultRecord> run_evaluation(const std::vector<TaskInstance>& instances,
                                         Method method, const PromptRegistry& prompts,
                                         Backend& backend, Translator* translator,
                                         const std::vector<FewShotExemplar>* exemplars,
                                         const EvalOptions& options) {
  if (instances.empty()) return {};
  const std::string& task = instances.front().task;
  const std::string& lang = instances.front().language.code;
  for (const auto& inst : instances) {
    if (inst.task != task || inst.language.code != lang)
      throw DataError("run_evaluation needs instances of one task and language");
  }

  // Translation happens before any scoring so the scoring loop never mixes
  // backend call kinds.
  std::vector<TaskInstance> effective;
  std::vector<std::vector<std::string>> used_keys(instances.size());
  if (method == Method::direct) {
    effective = instances;
  } else {
    if (!translator)
      throw ConfigError("method " + to_string(method) + " needs a translator");
    auto translated = translator->translate_all(instances, options.parallelism);
    effective.reserve(translated.size());
    for (std::size_t i = 0; i < translated.size(); ++i) {
      effective.push_back(translated[i].to_english_instance());
      used_keys[i] = translated[i].cache_keys;
    }
  }

  const std::string template_lang = method == Method::direct ? lang : "en";
  const PromptTemplate& tmpl = prompts.get(task, template_lang);
  const TaskKind kind = instances.front().kind;
  if (kind == TaskKind::generative && !exemplars)
    throw ConfigError("generative evaluation needs few-shot exemplars");

  std::vector<ResultRecord> records(instances.size());
  ordered_parallel_for(instances.size(), options.parallelism, [&](std::size_t i) {
    ResultRecord r =
        kind == TaskKind::multiple_choice
            ? infer_multiple_choice(effective[i], method, tmpl, backend, options.scoring)
            : infer_generative(effective[i], method, tmpl, *exemplars, backend,
                               options.extractor, options.generation);
    r.model = options.model;
    r.translations_used = used_keys[i];
    records[i] = std::move(r);
  });
  return records;
}

}  // namespace selftrans
