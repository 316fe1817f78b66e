#include "selftrans/extractor.hpp"

#include <regex>

#include "selftrans/util.hpp"

namespace selftrans {

AnswerExtractor::AnswerExtractor(std::string pattern) : pattern_(std::move(pattern)) {
  std::regex probe(pattern_);  // fail fast on a bad pattern
  (void)probe;
}

std::string AnswerExtractor::extract(const std::string& generation) const {
  std::regex re(pattern_);
  std::string last;
  for (auto it = std::sregex_iterator(generation.begin(), generation.end(), re);
       it != std::sregex_iterator(); ++it) {
    last = it->str();
  }
  if (last.empty()) return "";
  return normalize(last);
}

std::string AnswerExtractor::normalize(const std::string& token) {
  std::string s = trim(token);
  // Leading currency symbols; the non-ASCII ones arrive as UTF-8 sequences.
  static const char* currencies[] = {"$", "€", "£", "¥"};
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (const char* cur : currencies) {
      if (starts_with(s, cur)) {
        s.erase(0, std::string(cur).size());
        stripped = true;
      }
    }
    if (!s.empty() && s.front() == '+') {
      s.erase(s.begin());
      stripped = true;
    }
  }
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != ',') out.push_back(c);
  if (!out.empty() && out.back() == '.') out.pop_back();
  return out;
}

std::string AnswerExtractor::canonical(const std::string& token) {
  std::string s = normalize(token);
  auto dot = s.find('.');
  if (dot != std::string::npos && dot + 1 < s.size()) {
    bool all_zero = true;
    for (std::size_t i = dot + 1; i < s.size(); ++i)
      if (s[i] != '0') all_zero = false;
    if (all_zero) s.erase(dot);
  }
  return s;
}

bool AnswerExtractor::answers_equal(const std::string& extracted, const std::string& gold) {
  if (extracted.empty()) return false;
  return canonical(extracted) == canonical(gold);
}

}  // namespace selftrans
