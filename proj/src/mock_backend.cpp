#include "selftrans/mock_backend.hpp"

#include <chrono>
#include <functional>
#include <thread>

namespace selftrans {

namespace {

void maybe_jitter(bool enabled, const std::string& input) {
  if (!enabled) return;
  auto ms = std::hash<std::string>{}(input) % 7;
  std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

// Byte offset just past the n-th whitespace-delimited token, or npos if the
// text has at most n tokens.
std::size_t end_of_token(const std::string& text, int n) {
  int count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\n') ++i;
    (void)start;
    if (++count == n) return i;
  }
  return std::string::npos;
}

}  // namespace

int MockBackend::approx_token_count(const std::string& text) {
  int count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    if (i >= text.size()) break;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\n') ++i;
    ++count;
  }
  return count;
}

Completion MockBackend::complete(const CompletionSpec& spec) {
  validate_spec(spec);
  completion_calls_.fetch_add(1);
  maybe_jitter(behavior_.jitter, spec.prompt);
  if (behavior_.fail_inputs.count(spec.prompt))
    throw BackendError(BackendError::Kind::server, "mock: canned failure for prompt");

  const std::string* canned = nullptr;
  auto it = behavior_.completions.find(spec.prompt);
  if (it != behavior_.completions.end()) {
    canned = &it->second;
  } else {
    std::size_t best = 0;
    for (const auto& [prefix, text] : behavior_.prefix_completions) {
      if (prefix.size() >= best && spec.prompt.compare(0, prefix.size(), prefix) == 0) {
        best = prefix.size();
        canned = &text;
      }
    }
  }
  std::string full = canned ? *canned : behavior_.default_completion;

  // The canned text is the unbounded generation: cut at the stop sequence
  // first, then at the token budget.
  if (spec.stop) {
    auto pos = full.find(*spec.stop);
    if (pos != std::string::npos) full = full.substr(0, pos);
  }
  std::size_t cut = end_of_token(full, spec.max_new_tokens);
  if (cut != std::string::npos &&
      full.find_first_not_of(" \t\n", cut) != std::string::npos)
    return {full.substr(0, cut), FinishReason::length};
  return {full, FinishReason::stop};
}

Score MockBackend::score(const ScoreSpec& spec) {
  validate_spec(spec);
  score_calls_.fetch_add(1);
  maybe_jitter(behavior_.jitter, spec.context + "\x1f" + spec.continuation);
  if (behavior_.fail_inputs.count(spec.context))
    throw BackendError(BackendError::Kind::server, "mock: canned failure for context");

  Score s;
  auto it = behavior_.scores.find({spec.context, spec.continuation});
  s.total_logprob = it != behavior_.scores.end() ? it->second : behavior_.default_logprob;
  s.token_count = std::max(1, approx_token_count(spec.continuation));
  return s;
}

void MockBackend::reset_counters() {
  completion_calls_ = 0;
  score_calls_ = 0;
}

}  // namespace selftrans
