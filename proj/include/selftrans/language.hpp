#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace selftrans {

// Two-way split; the original low and extremely-low categories are merged.
enum class ResourceClass { high, low };

std::string to_string(ResourceClass c);

struct LanguageTag {
  std::string code;          // lowercase ISO code, e.g. "es"
  std::string display_name;  // English name used in translation prompts, e.g. "Spanish"
  ResourceClass resource_class = ResourceClass::high;
};

// Registry of known languages, built from the shipped resource-class table
// (lines of "<code> <high|low>", '#' comments allowed). Display names come
// from a built-in code->name map.
class LanguageRegistry {
 public:
  static LanguageRegistry load(const std::filesystem::path& table_path);
  // Registry with the built-in language set, for tests and defaults.
  static LanguageRegistry builtin();

  const LanguageTag& get(const std::string& code) const;  // throws on unknown code
  ResourceClass resource_class_of(const std::string& code) const;
  bool has(const std::string& code) const;

  void add(const LanguageTag& tag);

 private:
  std::map<std::string, LanguageTag> tags_;
};

// English display name for a language code ("es" -> "Spanish").
// Throws for codes without a built-in name.
const std::string& language_display_name(const std::string& code);

}  // namespace selftrans
