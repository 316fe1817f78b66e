#include "selftrans/language.hpp"

#include <cctype>

#include "selftrans/util.hpp"

namespace selftrans {

std::string to_string(ResourceClass c) {
  return c == ResourceClass::high ? "high" : "low";
}

namespace {

// English names for the language codes of the supported benchmarks plus the
// rest of the XGLM training set.
const std::map<std::string, std::string>& display_names() {
  static const std::map<std::string, std::string> names = {
      {"ar", "Arabic"},     {"bg", "Bulgarian"}, {"bn", "Bengali"},
      {"ca", "Catalan"},    {"de", "German"},    {"el", "Greek"},
      {"en", "English"},    {"es", "Spanish"},   {"et", "Estonian"},
      {"eu", "Basque"},     {"fi", "Finnish"},   {"fr", "French"},
      {"hi", "Hindi"},      {"ht", "Haitian Creole"}, {"id", "Indonesian"},
      {"it", "Italian"},    {"ja", "Japanese"},  {"ko", "Korean"},
      {"my", "Burmese"},    {"pt", "Portuguese"},{"qu", "Quechua"},
      {"ru", "Russian"},    {"sw", "Swahili"},   {"ta", "Tamil"},
      {"te", "Telugu"},     {"th", "Thai"},      {"tr", "Turkish"},
      {"ur", "Urdu"},       {"vi", "Vietnamese"},{"zh", "Chinese"},
  };
  return names;
}

void validate_code(const std::string& code) {
  if (code.empty()) throw DataError("language code is empty");
  for (char c : code) {
    if (!std::islower(static_cast<unsigned char>(c)))
      throw DataError("language code must be ASCII lowercase: \"" + code + "\"");
  }
}

}  // namespace

const std::string& language_display_name(const std::string& code) {
  const auto& names = display_names();
  auto it = names.find(code);
  if (it == names.end())
    throw DataError("no display name known for language \"" + code +
                    "\"; extend the built-in name table");
  return it->second;
}

LanguageRegistry LanguageRegistry::load(const std::filesystem::path& table_path) {
  LanguageRegistry reg;
  auto lines = read_lines(table_path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, ' ');
    std::vector<std::string> fields;
    for (auto& p : parts)
      if (!trim(p).empty()) fields.push_back(trim(p));
    if (fields.size() != 2 || (fields[1] != "high" && fields[1] != "low"))
      throw DataError(table_path.string() + ": line " + std::to_string(i + 1) +
                      ": expected \"<code> <high|low>\", got \"" + line + "\"");
    validate_code(fields[0]);
    LanguageTag tag{fields[0], language_display_name(fields[0]),
                    fields[1] == "high" ? ResourceClass::high : ResourceClass::low};
    reg.add(tag);
  }
  if (!reg.has("en"))
    throw DataError(table_path.string() + ": table must include \"en\"");
  return reg;
}

LanguageRegistry LanguageRegistry::builtin() {
  // XGLM training-set classification, low and extremely-low merged.
  static const char* high_codes[] = {"en", "ru", "zh", "de", "es", "fr", "ja",
                                     "it", "pt", "el", "ko", "fi", "id", "tr",
                                     "ar", "vi", "th", "bg", "ca", "hi"};
  static const char* low_codes[] = {"et", "bn", "ta", "ur", "sw",
                                    "te", "eu", "my", "ht", "qu"};
  LanguageRegistry reg;
  for (const char* c : high_codes)
    reg.add({c, language_display_name(c), ResourceClass::high});
  for (const char* c : low_codes)
    reg.add({c, language_display_name(c), ResourceClass::low});
  return reg;
}

const LanguageTag& LanguageRegistry::get(const std::string& code) const {
  auto it = tags_.find(code);
  if (it == tags_.end())
    throw DataError("language \"" + code +
                    "\" is not registered; add it to the resource-class table");
  return it->second;
}

ResourceClass LanguageRegistry::resource_class_of(const std::string& code) const {
  return get(code).resource_class;
}

bool LanguageRegistry::has(const std::string& code) const {
  return tags_.count(code) != 0;
}

void LanguageRegistry::add(const LanguageTag& tag) {
  validate_code(tag.code);
  if (tag.display_name.empty() ||
      !std::isupper(static_cast<unsigned char>(tag.display_name[0])))
    throw DataError("display name for \"" + tag.code + "\" must be capitalized");
  tags_[tag.code] = tag;
}

}  // namespace selftrans
