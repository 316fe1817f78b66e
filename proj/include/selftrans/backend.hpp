#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace selftrans {

enum class FinishReason { stop, length };

std::string to_string(FinishReason r);

// Greedy completion request; temperature is fixed at zero by construction.
struct CompletionSpec {
  std::string prompt;
  int max_new_tokens = 16;
  std::optional<std::string> stop;
};

// Continuation log-probability request.
struct ScoreSpec {
  std::string context;
  std::string continuation;
};

struct Completion {
  std::string text;  // stop sequence excluded
  FinishReason finish_reason = FinishReason::stop;
};

struct Score {
  double total_logprob = 0.0;  // natural log, summed over continuation tokens
  int token_count = 1;
};

using BackendRequest = std::variant<CompletionSpec, ScoreSpec>;
using BackendResponse = std::variant<Completion, Score>;

class BackendError : public std::runtime_error {
 public:
  enum class Kind { transport, server, config };
  BackendError(Kind kind, const std::string& msg, int attempts = 1)
      : std::runtime_error(msg), kind(kind), attempts(attempts) {}
  Kind kind;
  int attempts;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion complete(const CompletionSpec& spec) = 0;
  virtual Score score(const ScoreSpec& spec) = 0;
};

void validate_spec(const CompletionSpec& spec);
void validate_spec(const ScoreSpec& spec);

// Runs the requests with at most `parallelism` in flight. Responses come back
// in request order; the first terminal error aborts the whole batch.
std::vector<BackendResponse> run_batch(Backend& backend,
                                       const std::vector<BackendRequest>& requests,
                                       int parallelism);

}  // namespace selftrans
