#pragma once

#include <atomic>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "selftrans/backend.hpp"

namespace selftrans {

// Table-driven deterministic backend. Responses are a pure function of the
// tables and the request; optional jitter perturbs timing only.
struct MockBehavior {
  std::map<std::string, std::string> completions;  // exact prompt -> canned text
  // Longest matching prefix wins when no exact entry exists.
  std::vector<std::pair<std::string, std::string>> prefix_completions;
  std::string default_completion;
  std::map<std::pair<std::string, std::string>, double> scores;
  double default_logprob = -10.0;
  // Inputs listed here raise terminal server errors, for abort-path tests.
  std::set<std::string> fail_inputs;
  bool jitter = false;
};

class MockBackend : public Backend {
 public:
  explicit MockBackend(MockBehavior behavior) : behavior_(std::move(behavior)) {}

  Completion complete(const CompletionSpec& spec) override;
  Score score(const ScoreSpec& spec) override;

  long completion_calls() const { return completion_calls_.load(); }
  long score_calls() const { return score_calls_.load(); }
  void reset_counters();

  // Whitespace-token count used for the mock's notion of tokens.
  static int approx_token_count(const std::string& text);

 private:
  MockBehavior behavior_;
  std::atomic<long> completion_calls_{0};
  std::atomic<long> score_calls_{0};
};

}  // namespace selftrans
