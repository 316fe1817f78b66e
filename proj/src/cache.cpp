#include "selftrans/cache.hpp"

#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {
using ordered_json = nlohmann::ordered_json;

std::string record_to_line(const TranslationRecord& r) {
  ordered_json obj;
  obj["key"] = r.key;
  obj["model"] = r.model;
  obj["lang"] = r.lang;
  obj["source_text"] = r.source_text;
  obj["english_text"] = r.english_text;
  obj["empty_output"] = r.empty_output;
  obj["created_at"] = r.created_at;
  return obj.dump();
}

std::optional<TranslationRecord> line_to_record(const std::string& line) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(line);
  } catch (const ordered_json::exception&) {
    return std::nullopt;
  }
  if (!obj.is_object()) return std::nullopt;
  TranslationRecord r;
  try {
    r.key = obj.at("key").get<std::string>();
    r.model = obj.at("model").get<std::string>();
    r.lang = obj.at("lang").get<std::string>();
    r.source_text = obj.at("source_text").get<std::string>();
    r.english_text = obj.at("english_text").get<std::string>();
    r.empty_output = obj.at("empty_output").get<bool>();
    r.created_at = obj.value("created_at", "");
  } catch (const ordered_json::exception&) {
    return std::nullopt;
  }
  if (r.key.empty()) return std::nullopt;
  if (r.english_text.empty() && !r.empty_output) return std::nullopt;
  return r;
}

}  // namespace

TranslationCache::TranslationCache(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "translations.jsonl";
  if (!std::filesystem::exists(file_)) return;
  std::ifstream in(file_, std::ios::binary);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto rec = line_to_record(line);
    if (!rec) {
      std::cerr << "warning: " << file_.string() << ": line " << lineno
                << ": skipping corrupt cache record\n";
      continue;
    }
    index_[rec->key] = std::move(*rec);
  }
}

std::optional<TranslationRecord> TranslationCache::get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TranslationCache::put(const TranslationRecord& record) {
  if (record.key.empty()) throw DataError("cache record has no key");
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(file_, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot append to cache file: " + file_.string());
  out << record_to_line(record) << "\n";
  out.flush();
  if (!out) throw DataError("cache append failed: " + file_.string());
  index_[record.key] = record;
}

std::size_t TranslationCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return index_.size();
}

std::string TranslationCache::make_key(const std::string& model,
                                       const std::string& lang_code,
                                       const std::string& source_text,
                                       const std::string& prompt_fingerprint,
                                       const std::string& decode_params) {
  ordered_json tuple;
  tuple["model"] = model;
  tuple["lang"] = lang_code;
  tuple["text"] = source_text;
  tuple["prompt"] = prompt_fingerprint;
  tuple["decode"] = decode_params;
  return sha256_hex(tuple.dump());
}

}  // namespace selftrans
