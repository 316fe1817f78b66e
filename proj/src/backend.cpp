#include "selftrans/backend.hpp"

#include "selftrans/util.hpp"

namespace selftrans {

std::string to_string(FinishReason r) {
  return r == FinishReason::stop ? "stop" : "length";
}

void validate_spec(const CompletionSpec& spec) {
  if (spec.max_new_tokens < 1)
    throw std::invalid_argument("completion needs max_new_tokens >= 1");
  if (spec.stop && spec.stop->empty())
    throw std::invalid_argument("stop sequence must be non-empty when set");
}

void validate_spec(const ScoreSpec& spec) {
  if (spec.continuation.empty())
    throw std::invalid_argument("score continuation must be non-empty");
}

std::vector<BackendResponse> run_batch(Backend& backend,
                                       const std::vector<BackendRequest>& requests,
                                       int parallelism) {
  std::vector<std::optional<BackendResponse>> slots(requests.size());
  ordered_parallel_for(requests.size(), parallelism, [&](std::size_t i) {
    slots[i] = std::visit(
        [&](const auto& req) -> BackendResponse {
          using T = std::decay_t<decltype(req)>;
          if constexpr (std::is_same_v<T, CompletionSpec>)
            return backend.complete(req);
          else
            return backend.score(req);
        },
        requests[i]);
  });
  std::vector<BackendResponse> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace selftrans
