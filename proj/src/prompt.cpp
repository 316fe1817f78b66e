#include "selftrans/prompt.hpp"

#include <algorithm>
#include <set>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {

constexpr const char* kMask = "[MASK]";

struct Segment {
  enum class Kind { literal, slot, mask } kind;
  std::string value;
};

bool valid_slot_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// The template text is parsed once into literal/slot/mask segments; field
// values are spliced in afterwards and never re-scanned.
std::vector<Segment> parse_segments(const std::string& text) {
  std::vector<Segment> segs;
  std::string literal;
  std::size_t i = 0;
  auto flush = [&]() {
    if (!literal.empty()) {
      segs.push_back({Segment::Kind::literal, literal});
      literal.clear();
    }
  };
  while (i < text.size()) {
    if (text.compare(i, 6, kMask) == 0) {
      flush();
      segs.push_back({Segment::Kind::mask, ""});
      i += 6;
      continue;
    }
    if (text[i] == '{') {
      auto close = text.find('}', i + 1);
      if (close != std::string::npos) {
        std::string name = text.substr(i + 1, close - i - 1);
        if (valid_slot_name(name)) {
          flush();
          segs.push_back({Segment::Kind::slot, name});
          i = close + 1;
          continue;
        }
      }
    }
    literal.push_back(text[i]);
    ++i;
  }
  flush();
  return segs;
}

void validate_template_text(const std::string& text, const std::string& where,
                            bool mask_at_end) {
  auto segs = parse_segments(text);
  int masks = 0;
  std::set<std::string> slots;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.kind == Segment::Kind::mask) {
      ++masks;
      if (mask_at_end && i + 1 != segs.size())
        throw DataError(where + ": generative template must end at the mask");
    } else if (s.kind == Segment::Kind::slot) {
      if (!slots.insert(s.value).second)
        throw DataError(where + ": slot {" + s.value + "} appears more than once");
    }
  }
  if (masks != 1)
    throw DataError(where + ": template must contain the mask marker exactly once, found " +
                    std::to_string(masks));
}

// Substitutes slots and splits at the mask. `mask_text` replaces the marker.
struct Rendered {
  std::string prefix;
  std::string tail;
};

Rendered render_segments(const std::vector<Segment>& segs,
                         const TaskInstance& instance, const std::string& where,
                         const std::string* question_override = nullptr) {
  Rendered r;
  std::string* out = &r.prefix;
  bool seen_mask = false;
  for (const auto& s : segs) {
    switch (s.kind) {
      case Segment::Kind::literal:
        *out += s.value;
        break;
      case Segment::Kind::slot:
        if (question_override && s.value == "question") {
          *out += *question_override;
        } else {
          if (!instance.has_field(s.value))
            throw DataError(where + ": missing slot value for {" + s.value + "}");
          *out += instance.field(s.value);
        }
        break;
      case Segment::Kind::mask:
        seen_mask = true;
        out = &r.tail;
        break;
    }
  }
  if (!seen_mask) throw DataError(where + ": template has no mask");
  return r;
}

}  // namespace

const std::string& PromptTemplate::template_for(const TaskInstance& instance) const {
  if (variant_selector.empty()) return text;
  const std::string& value = instance.field(variant_selector);
  auto it = variants.find(value);
  if (it == variants.end())
    throw DataError(task + "." + language_code + ": no template variant for " +
                    variant_selector + "=\"" + value + "\"");
  return it->second;
}

std::vector<RenderedChoice> render_choices(const TaskInstance& instance,
                                           const PromptTemplate& tmpl) {
  if (instance.kind != TaskKind::multiple_choice)
    throw DataError(instance.task_id + ": render_choices needs a multiple-choice instance");
  if (tmpl.task != instance.task)
    throw DataError(instance.task_id + ": template is for task " + tmpl.task);
  if (tmpl.verbalizer_kind == VerbalizerKind::none)
    throw DataError(instance.task_id + ": a generative template cannot render choices");

  const std::string where = tmpl.task + "." + tmpl.language_code;
  auto segs = parse_segments(tmpl.template_for(instance));
  Rendered base = render_segments(segs, instance, where);

  std::vector<std::string> words;
  if (tmpl.verbalizer_kind == VerbalizerKind::identity) {
    words = instance.candidates;
  } else {
    if (tmpl.verbalizer.size() != instance.candidates.size())
      throw DataError(where + ": verbalizer arity " + std::to_string(tmpl.verbalizer.size()) +
                      " does not match candidate count " +
                      std::to_string(instance.candidates.size()));
    for (const auto& [label, word] : tmpl.verbalizer) words.push_back(word);
  }

  // Trailing spaces before the mask move to the continuation so every
  // continuation starts at a token boundary.
  std::string context = base.prefix;
  std::string moved;
  while (!context.empty() && context.back() == ' ') {
    moved.insert(moved.begin(), ' ');
    context.pop_back();
  }

  std::vector<RenderedChoice> out;
  out.reserve(words.size());
  for (const auto& word : words) {
    RenderedChoice choice;
    choice.context = context;
    choice.continuation = moved + word + base.tail;
    if (choice.continuation.empty())
      throw DataError(where + ": empty continuation for instance " + instance.task_id);
    out.push_back(std::move(choice));
  }
  return out;
}

std::string render_generative(const TaskInstance& instance, const PromptTemplate& tmpl,
                              const std::vector<FewShotExemplar>& exemplars) {
  if (instance.kind != TaskKind::generative)
    throw DataError(instance.task_id + ": render_generative needs a generative instance");
  if (tmpl.verbalizer_kind != VerbalizerKind::none)
    throw DataError(instance.task_id + ": generative rendering needs a verbalizer-free template");
  if (exemplars.size() != 8)
    throw DataError(instance.task_id + ": expected exactly 8 exemplars, got " +
                    std::to_string(exemplars.size()));
  for (const auto& ex : exemplars) {
    if (ex.language.code != tmpl.language_code)
      throw DataError(instance.task_id + ": exemplar language " + ex.language.code +
                      " does not match prompt language " + tmpl.language_code);
  }

  const std::string where = tmpl.task + "." + tmpl.language_code;
  auto segs = parse_segments(tmpl.template_for(instance));

  std::string prompt;
  for (const auto& ex : exemplars) {
    Rendered r = render_segments(segs, instance, where, &ex.question);
    prompt += r.prefix + " " + ex.chain_of_thought_answer + r.tail;
    prompt += "\n\n";
  }
  Rendered query = render_segments(segs, instance, where);
  prompt += query.prefix + query.tail;
  return prompt;
}

TranslationPrompt build_translation_prompt(const std::vector<ParallelSentencePair>& shots,
                                           const std::string& query,
                                           const LanguageTag& language) {
  if (trim(query).empty()) throw DataError("translation query is empty");
  TranslationPrompt prompt;
  prompt.query_source = query;
  prompt.stop_sequence = "\n";
  for (const auto& shot : shots) {
    prompt.shots.emplace_back(shot.source_text, shot.english_text);
    prompt.rendered += language.display_name + ": " + shot.source_text + "\nEnglish: " +
                       shot.english_text + "\n\n";
  }
  prompt.rendered += language.display_name + ": " + query + "\nEnglish:";
  return prompt;
}

PromptTemplate PromptRegistry::parse_file(const std::filesystem::path& path,
                                          const std::string& task,
                                          const std::string& lang) {
  const TaskSchema& schema = task_schema(task);
  std::string content = read_file(path);
  auto lines = read_lines(path);
  if (lines.empty()) throw DataError(path.string() + ": empty template file");

  PromptTemplate tmpl;
  tmpl.task = task;
  tmpl.language_code = lang;
  tmpl.fingerprint = sha256_hex(content);

  std::string header = trim(lines[0]);
  if (!starts_with(header, "verbalizer:"))
    throw DataError(path.string() + ": first line must declare the verbalizer");
  std::string decl = trim(header.substr(std::string("verbalizer:").size()));
  if (decl == "identity") {
    tmpl.verbalizer_kind = VerbalizerKind::identity;
  } else if (decl == "none") {
    tmpl.verbalizer_kind = VerbalizerKind::none;
  } else {
    tmpl.verbalizer_kind = VerbalizerKind::map;
    std::map<std::string, std::string> entries;
    for (const auto& part : split(decl, ';')) {
      std::string entry = trim(part);
      if (entry.empty()) continue;
      auto eq = entry.find('=');
      if (eq == std::string::npos)
        throw DataError(path.string() + ": bad verbalizer entry \"" + entry + "\"");
      entries[trim(entry.substr(0, eq))] = trim(entry.substr(eq + 1));
    }
    if (entries.size() != schema.label_names.size())
      throw DataError(path.string() + ": verbalizer must cover exactly the labels of " + task);
    for (const auto& label : schema.label_names) {
      auto it = entries.find(label);
      if (it == entries.end())
        throw DataError(path.string() + ": verbalizer missing label \"" + label + "\"");
      if (it->second.empty())
        throw DataError(path.string() + ": empty verbalizer word for \"" + label + "\"");
      tmpl.verbalizer.emplace_back(label, it->second);
    }
  }

  std::size_t body_start = 1;
  if (lines.size() > 1 && starts_with(trim(lines[1]), "variants:")) {
    tmpl.variant_selector = trim(trim(lines[1]).substr(std::string("variants:").size()));
    if (tmpl.variant_selector.empty())
      throw DataError(path.string() + ": variants header names no selector field");
    body_start = 2;
  }

  bool mask_at_end = tmpl.verbalizer_kind == VerbalizerKind::none;
  if (!tmpl.variant_selector.empty()) {
    for (std::size_t i = body_start; i < lines.size(); ++i) {
      std::string line = lines[i];
      if (trim(line).empty()) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw DataError(path.string() + ": variant line needs \"<value>: <template>\"");
      std::string value = trim(line.substr(0, colon));
      std::string body = line.substr(colon + 1);
      if (!body.empty() && body.front() == ' ') body.erase(body.begin());
      validate_template_text(body, path.string() + " [" + value + "]", mask_at_end);
      tmpl.variants[value] = body;
    }
    if (tmpl.variants.empty())
      throw DataError(path.string() + ": no variant templates found");
  } else {
    std::vector<std::string> body(lines.begin() + body_start, lines.end());
    while (!body.empty() && trim(body.back()).empty()) body.pop_back();
    std::string text;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) text += "\n";
      text += body[i];
    }
    validate_template_text(text, path.string(), mask_at_end);
    tmpl.text = text;
  }
  return tmpl;
}

PromptRegistry PromptRegistry::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw DataError("prompt registry directory not found: " + dir.string());
  PromptRegistry reg;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".prompt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    auto parts = split(file.stem().string(), '.');
    if (parts.size() != 2)
      throw DataError(file.string() + ": template files are named <task>.<lang>.prompt");
    reg.add(parse_file(file, parts[0], parts[1]));
  }
  return reg;
}

void PromptRegistry::add(PromptTemplate tmpl) {
  templates_[{tmpl.task, tmpl.language_code}] = std::move(tmpl);
}

const PromptTemplate& PromptRegistry::get(const std::string& task,
                                          const std::string& lang_code) const {
  auto it = templates_.find({task, lang_code});
  if (it == templates_.end())
    throw DataError("no prompt template for (" + task + ", " + lang_code +
                    ") in the registry; templates are never borrowed from another language");
  return it->second;
}

bool PromptRegistry::has(const std::string& task, const std::string& lang_code) const {
  return templates_.count({task, lang_code}) != 0;
}

}  // namespace selftrans
