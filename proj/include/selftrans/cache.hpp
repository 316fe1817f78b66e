#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace selftrans {

// Cached mapping from a source field to its English translation. The key is
// a digest over (model id, language code, source text, prompt fingerprint,
// decode parameters), so prompt-layout or decode changes invalidate entries.
struct TranslationRecord {
  std::string key;
  std::string model;
  std::string lang;
  std::string source_text;
  std::string english_text;
  bool empty_output = false;
  std::string created_at;  // ISO-8601 UTC
};

// Append-only JSONL store, one record per line. Concurrent readers are fine;
// appends are serialized behind a mutex. Corrupt lines are skipped with a
// warning on load, never a crash.
class TranslationCache {
 public:
  explicit TranslationCache(const std::filesystem::path& dir);

  std::optional<TranslationRecord> get(const std::string& key) const;
  void put(const TranslationRecord& record);
  std::size_t size() const;

  const std::filesystem::path& file() const { return file_; }

  static std::string make_key(const std::string& model, const std::string& lang_code,
                              const std::string& source_text,
                              const std::string& prompt_fingerprint,
                              const std::string& decode_params);

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, TranslationRecord> index_;
};

}  // namespace selftrans
