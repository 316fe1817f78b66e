// selftrans — evaluate multilingual tasks with direct inference,
// self-translated inputs, or an external MT system.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "selftrans/bleu.hpp"
#include "selftrans/comet.hpp"
#include "selftrans/config.hpp"
#include "selftrans/dataset.hpp"
#include "selftrans/http_backend.hpp"
#include "selftrans/inference.hpp"
#include "selftrans/metrics.hpp"
#include "selftrans/report.hpp"
#include "selftrans/results_io.hpp"
#include "selftrans/util.hpp"

namespace st = selftrans;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Overrides {
  std::optional<std::string> task, method, backend_url, model, cache_dir, prompts, out,
      format, normalize, mt_url, comet_url, data_dir, flores_dir, exemplars_dir,
      languages_file, language_table;
  std::optional<int> shots, max_shot_chars, parallelism, retries, backoff_ms;
  std::vector<std::string> langs;
  std::vector<std::string> inputs;
  std::string config_file;
  bool scale = false;
};

st::RunConfig effective_config(const Overrides& o) {
  st::RunConfig c;
  if (const char* env = std::getenv("SELFTRANS_BACKEND_URL")) c.backend_url = env;
  if (!o.config_file.empty()) c = st::load_config_file(c, o.config_file);
  if (o.task) c.task = *o.task;
  if (!o.langs.empty()) c.languages = o.langs;
  if (o.method) c.method = *o.method;
  if (o.backend_url) c.backend_url = *o.backend_url;
  if (o.model) c.model = *o.model;
  if (o.shots) c.shots_k = *o.shots;
  if (o.max_shot_chars) c.shot_max_chars = *o.max_shot_chars;
  if (o.cache_dir) c.cache_dir = *o.cache_dir;
  if (o.prompts) c.prompts_dir = *o.prompts;
  if (o.out) c.out_dir = *o.out;
  if (o.parallelism) c.parallelism = *o.parallelism;
  if (o.retries) c.retries = *o.retries;
  if (o.backoff_ms) c.backoff_base_ms = *o.backoff_ms;
  if (o.format) c.format = *o.format;
  if (o.normalize) c.normalize = *o.normalize;
  if (o.mt_url) c.mt_url = *o.mt_url;
  if (o.comet_url) c.comet_url = *o.comet_url;
  if (o.data_dir) c.data_dir = *o.data_dir;
  if (o.flores_dir) c.flores_dir = *o.flores_dir;
  if (o.exemplars_dir) c.exemplars_dir = *o.exemplars_dir;
  if (o.languages_file) c.languages_file = *o.languages_file;
  if (!o.inputs.empty()) c.report_inputs = o.inputs;
  c.validate();
  return c;
}

struct LanguageRun {
  st::LanguageTag lang;
  std::vector<st::TaskInstance> instances;
  std::unique_ptr<st::Translator> translator;
  std::vector<int> shot_positions;
};

st::Method parse_method(const st::RunConfig& c) { return st::method_from_string(c.method); }

void require_run_selection(const st::RunConfig& c) {
  if (c.task.empty()) throw st::ConfigError("--task is required");
  st::task_schema(c.task);  // validates the name
  if (c.languages.empty()) throw st::ConfigError("at least one --lang is required");
}

std::filesystem::path task_file(const st::RunConfig& c, const std::string& lang) {
  return c.data_dir / (c.task + "." + lang + ".jsonl");
}

// Builds the per-language translator for the chosen method. English inputs
// under the translation methods use the identity translator.
std::unique_ptr<st::Translator> make_translator(
    const st::RunConfig& c, st::Method method, const st::LanguageTag& lang,
    st::Backend* backend, st::MtClient* mt, st::TranslationCache* cache,
    std::vector<int>* shot_positions) {
  if (method == st::Method::direct) return nullptr;
  st::TranslationOptions opt;
  opt.max_new_tokens = c.translation_max_new_tokens;
  opt.on_empty = c.on_empty == "keep" ? st::TranslationOptions::OnEmpty::keep
                                      : st::TranslationOptions::OnEmpty::fallback_source;
  if (lang.code == "en")
    return std::make_unique<st::Translator>(st::TranslatorKind::identity, lang, nullptr,
                                            nullptr, nullptr, c.model,
                                            std::vector<st::ParallelSentencePair>{}, opt);
  if (method == st::Method::self_translate) {
    auto pairs = st::load_parallel_dev(c.flores_dir, lang);
    auto selection = st::select_translation_shots(pairs, c.shots_k, c.shot_max_chars);
    if (selection.shortfall)
      std::cerr << "warning: only " << selection.shots.size() << " of " << c.shots_k
                << " translation shots available for " << lang.code << "\n";
    auto tr = std::make_unique<st::Translator>(st::TranslatorKind::self_model, lang,
                                               backend, nullptr, cache, c.model,
                                               selection.shots, opt);
    if (shot_positions) *shot_positions = tr->shot_positions();
    return tr;
  }
  return std::make_unique<st::Translator>(st::TranslatorKind::external_mt, lang, nullptr,
                                          mt, cache, c.model,
                                          std::vector<st::ParallelSentencePair>{}, opt);
}

st::RunManifest make_manifest(const st::RunConfig& c, const st::PromptRegistry& prompts,
                              st::Method method,
                              const std::vector<LanguageRun>& runs) {
  st::RunManifest m;
  m.tool_version = st::kToolVersion;
  m.effective_config_json = st::config_to_json(c);
  m.config_digest = st::config_digest(c);
  for (const auto& run : runs) {
    std::string tmpl_lang = method == st::Method::direct ? run.lang.code : "en";
    if (prompts.has(c.task, tmpl_lang))
      m.prompt_fingerprints[c.task + "." + tmpl_lang] =
          prompts.get(c.task, tmpl_lang).fingerprint;
    if (!run.shot_positions.empty()) m.shot_positions[run.lang.code] = run.shot_positions;
  }
  return m;
}

int cmd_eval(const st::RunConfig& c) {
  require_run_selection(c);
  st::Method method = parse_method(c);
  auto languages = st::LanguageRegistry::load(c.languages_file);
  auto prompts = st::PromptRegistry::load(c.prompts_dir);
  st::HttpBackend backend({c.backend_url, c.model, c.retries, c.backoff_base_ms});
  st::MtClient mt({c.mt_url, "mt", c.retries, c.backoff_base_ms});
  st::TranslationCache cache(c.cache_dir);

  st::EvalOptions options;
  options.scoring.normalize = c.normalize == "per_token"
                                  ? st::ScoringOptions::Normalize::per_token
                                  : st::ScoringOptions::Normalize::none;
  options.generation.max_new_tokens = c.generation_max_new_tokens;
  if (!c.extractor_pattern.empty())
    options.extractor = st::AnswerExtractor(c.extractor_pattern);
  options.parallelism = c.parallelism;
  options.model = c.model;

  std::vector<LanguageRun> runs;
  for (const auto& code : c.languages) {
    LanguageRun run;
    run.lang = languages.get(code);
    run.instances = st::load_task(task_file(c, code), c.task, run.lang);
    run.translator = make_translator(c, method, run.lang, &backend, &mt, &cache,
                                     &run.shot_positions);
    runs.push_back(std::move(run));
  }

  const st::TaskSchema& schema = st::task_schema(c.task);
  for (auto& run : runs) {
    std::vector<st::FewShotExemplar> exemplars;
    const std::vector<st::FewShotExemplar>* exemplars_ptr = nullptr;
    if (schema.kind == st::TaskKind::generative) {
      std::string ex_lang = method == st::Method::direct ? run.lang.code : "en";
      exemplars = st::load_exemplars(c.exemplars_dir / ("mgsm_" + ex_lang + ".jsonl"),
                                     languages.get(ex_lang));
      exemplars_ptr = &exemplars;
    }
    auto records = st::run_evaluation(run.instances, method, prompts, backend,
                                      run.translator.get(), exemplars_ptr, options);
    auto path = c.out_dir / st::results_filename(c.task, run.lang.code, method, c.model);
    st::write_results_file(path, records);
    st::write_manifest(path.string() + ".manifest.json",
                       make_manifest(c, prompts, method, runs));
    auto cell = st::accuracy(records);
    std::cout << path.string() << "  accuracy=" << st::format_rounded(cell.accuracy * 100)
              << " (" << cell.correct_count << "/" << cell.total_count << ")\n";
  }
  return 0;
}

int cmd_translate(const st::RunConfig& c) {
  require_run_selection(c);
  st::Method method = parse_method(c);
  if (method == st::Method::direct)
    throw st::ConfigError("translate needs --method self or --method mt");
  auto languages = st::LanguageRegistry::load(c.languages_file);
  st::HttpBackend backend({c.backend_url, c.model, c.retries, c.backoff_base_ms});
  st::MtClient mt({c.mt_url, "mt", c.retries, c.backoff_base_ms});
  st::TranslationCache cache(c.cache_dir);

  long fresh = 0, cached = 0, empty = 0;
  for (const auto& code : c.languages) {
    const auto& lang = languages.get(code);
    auto instances = st::load_task(task_file(c, code), c.task, lang);
    auto translator = make_translator(c, method, lang, &backend, &mt, &cache, nullptr);
    translator->translate_all(instances, c.parallelism);
    const auto& s = translator->last_summary();
    std::cout << code << ": fresh=" << s.fresh << " cached=" << s.cached
              << " empty=" << s.empty << "\n";
    fresh += s.fresh;
    cached += s.cached;
    empty += s.empty;
  }
  std::cout << "total: fresh=" << fresh << " cached=" << cached << " empty=" << empty
            << " (cache: " << cache.file().string() << ")\n";
  return 0;
}

std::vector<st::MetricCell> load_cells(const std::vector<std::string>& globs) {
  std::vector<st::MetricCell> cells;
  for (const auto& pattern : globs) {
    auto paths = st::expand_glob(pattern);
    if (paths.empty())
      throw st::DataError("no result files match \"" + pattern + "\"");
    for (const auto& path : paths) {
      auto records = st::read_results_file(path);
      auto cell = st::to_metric_cell(st::accuracy(records));
      cell.value *= 100.0;  // report scale
      cell.source = path.string();
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

int cmd_report(const st::RunConfig& c, const Overrides& o) {
  if (c.report_inputs.empty())
    throw st::ConfigError("report needs at least one --inputs glob");
  auto cells = load_cells(c.report_inputs);
  bool write_md = c.format == "md" || c.format == "md,csv" || c.format == "csv,md";
  bool write_csv = c.format == "csv" || c.format == "md,csv" || c.format == "csv,md";

  auto emit = [&](const std::string& stem, const std::string& md, const std::string& csv) {
    if (write_md) {
      auto p = c.out_dir / (stem + ".md");
      st::atomic_write_file(p, md);
      std::cout << p.string() << "\n";
    }
    if (write_csv) {
      auto p = c.out_dir / (stem + ".csv");
      st::atomic_write_file(p, csv);
      std::cout << p.string() << "\n";
    }
  };

  auto rows = st::build_comparison(cells);
  emit("comparison", st::render_comparison_markdown(rows),
       st::render_comparison_csv(rows));

  if (o.language_table) {
    auto table = st::build_language_table(cells, *o.language_table);
    emit("language." + *o.language_table, st::render_language_table_markdown(table),
         st::render_language_table_csv(table));
  }
  if (o.scale) {
    auto languages = st::LanguageRegistry::load(c.languages_file);
    auto curve = st::build_scale_curve(cells, languages);
    for (const auto& note : curve.notes) std::cerr << "note: " << note << "\n";
    auto p = c.out_dir / "scale.csv";
    st::atomic_write_file(p, st::render_scale_curve_csv(curve));
    std::cout << p.string() << "\n";
  }
  return 0;
}

int cmd_mt_metrics(const st::RunConfig& c) {
  require_run_selection(c);
  st::Method method = parse_method(c);
  if (method == st::Method::direct)
    throw st::ConfigError("mt-metrics needs --method self or --method mt");
  auto languages = st::LanguageRegistry::load(c.languages_file);
  st::HttpBackend backend({c.backend_url, c.model, c.retries, c.backoff_base_ms});
  st::MtClient mt({c.mt_url, "mt", c.retries, c.backoff_base_ms});
  st::TranslationCache cache(c.cache_dir);
  const st::TaskSchema& schema = st::task_schema(c.task);

  for (const auto& code : c.languages) {
    if (code == "en") continue;
    const auto& lang = languages.get(code);
    auto instances = st::load_task(task_file(c, code), c.task, lang);
    auto english = st::load_task(task_file(c, "en"), c.task, languages.get("en"));
    if (instances.size() != english.size())
      throw st::DataError(c.task + "." + code + " and " + c.task +
                          ".en are not aligned: " + std::to_string(instances.size()) +
                          " vs " + std::to_string(english.size()) + " instances");

    auto translator = make_translator(c, method, lang, &backend, &mt, &cache, nullptr);
    auto translated = translator->translate_all(instances, c.parallelism);

    std::vector<std::string> sources, hypotheses, references;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      auto en_instance = english[i];
      for (std::size_t f = 0; f < translated[i].english_fields.size(); ++f) {
        const auto& [name, hyp] = translated[i].english_fields[f];
        sources.push_back(instances[i].field(name));
        hypotheses.push_back(hyp);
        references.push_back(en_instance.field(name));
      }
      if (schema.translate_candidates) {
        for (std::size_t k = 0; k < translated[i].english_candidates.size(); ++k) {
          sources.push_back(instances[i].candidates[k]);
          hypotheses.push_back(translated[i].english_candidates[k]);
          references.push_back(en_instance.candidates[k]);
        }
      }
    }

    auto bleu = st::corpus_bleu(hypotheses, references);
    auto comet = st::comet_score(sources, hypotheses, references,
                                 {c.comet_url, "comet", c.retries, c.backoff_base_ms});

    std::string content;
    {
      ordered_json line;
      line["task"] = c.task;
      line["lang"] = code;
      line["method"] = st::to_string(method);
      line["model"] = c.model;
      line["metric"] = "bleu";
      line["value"] = bleu.score;
      ordered_json details;
      details["precisions"] =
          std::vector<double>(bleu.precisions.begin(), bleu.precisions.end());
      details["brevity_penalty"] = bleu.brevity_penalty;
      details["hyp_len"] = bleu.hyp_len;
      details["ref_len"] = bleu.ref_len;
      line["details"] = details;
      content += line.dump() + "\n";
    }
    {
      ordered_json line;
      line["task"] = c.task;
      line["lang"] = code;
      line["method"] = st::to_string(method);
      line["model"] = c.model;
      line["metric"] = "comet";
      if (comet) {
        line["value"] = comet->score;
        line["details"] = {{"scorer_model_id", comet->scorer_model_id}};
      } else {
        line["value"] = nullptr;
        line["details"] = {{"status", "unavailable"}};
      }
      content += line.dump() + "\n";
    }
    auto path = c.out_dir / (c.task + "." + code + "." + st::method_file_token(method) +
                             "." + c.model + ".metrics.jsonl");
    st::atomic_write_file(path, content);
    std::cout << path.string() << "  bleu=" << st::format_rounded(bleu.score) << "  comet="
              << (comet ? st::format_rounded(comet->score) : std::string("unavailable"))
              << "\n";
  }
  return 0;
}

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--task", o.task, "Task name (xnli, pawsx, xcopa, xstorycloze, mgsm)");
  cmd->add_option("--lang", o.langs, "Language code; repeatable");
  cmd->add_option("--method", o.method, "direct|self|mt");
  cmd->add_option("--backend-url", o.backend_url, "Model server base URL");
  cmd->add_option("--model", o.model, "Model identifier sent to the server");
  cmd->add_option("--shots", o.shots, "Translation shots (default 4)");
  cmd->add_option("--max-shot-chars", o.max_shot_chars,
                  "Character cutoff for shot sentences (default 100)");
  cmd->add_option("--cache-dir", o.cache_dir, "Translation cache directory");
  cmd->add_option("--prompts", o.prompts, "Prompt registry directory");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--config", o.config_file, "JSON config file");
  cmd->add_option("--parallelism", o.parallelism, "Max in-flight backend requests");
  cmd->add_option("--format", o.format, "Report format: md|csv|md,csv");
  cmd->add_option("--normalize", o.normalize, "Candidate scoring: none|per_token");
  cmd->add_option("--retries", o.retries, "Backend attempts on transport errors");
  cmd->add_option("--backoff-ms", o.backoff_ms, "Retry backoff base in milliseconds");
  cmd->add_option("--mt-url", o.mt_url, "External MT endpoint base URL");
  cmd->add_option("--comet-url", o.comet_url, "COMET scorer endpoint base URL");
  cmd->add_option("--data-dir", o.data_dir, "Task dataset directory");
  cmd->add_option("--flores-dir", o.flores_dir, "Parallel dev split directory");
  cmd->add_option("--exemplars-dir", o.exemplars_dir, "Few-shot exemplar directory");
  cmd->add_option("--languages-file", o.languages_file, "Resource-class table");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate multilingual tasks directly, via self-translation, or via MT"};
  app.require_subcommand(1);
  Overrides o;

  CLI::App* translate = app.add_subcommand("translate", "Populate the translation cache");
  CLI::App* eval = app.add_subcommand("eval", "Run an evaluation and write results");
  CLI::App* report = app.add_subcommand("report", "Render result files into tables");
  CLI::App* mt_metrics =
      app.add_subcommand("mt-metrics", "Score translation quality (BLEU, COMET)");
  for (CLI::App* cmd : {translate, eval, report, mt_metrics}) add_common_flags(cmd, o);
  report->add_option("--inputs", o.inputs, "Result file glob; repeatable");
  report->add_option("--language-table", o.language_table,
                     "Also emit the per-language table for this task");
  report->add_flag("--scale", o.scale, "Also emit the scale-curve series CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    st::RunConfig config = effective_config(o);
    if (app.got_subcommand(translate)) return cmd_translate(config);
    if (app.got_subcommand(eval)) return cmd_eval(config);
    if (app.got_subcommand(report)) return cmd_report(config, o);
    return cmd_mt_metrics(config);
  } catch (const st::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
