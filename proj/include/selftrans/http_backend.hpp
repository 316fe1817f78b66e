#pragma once

#include <string>

#include "selftrans/backend.hpp"

namespace selftrans {

struct HttpBackendConfig {
  std::string url;    // base, e.g. "http://127.0.0.1:8080"
  std::string model;
  int retries = 3;          // max attempts on transport failures
  int backoff_base_ms = 500;
  int timeout_seconds = 120;
};

// POSTs a JSON body and returns the response body. Transport failures and
// 5xx responses are retried with exponential backoff up to config.retries
// attempts; 4xx responses are terminal server errors.
std::string http_post_json(const HttpBackendConfig& config, const std::string& path,
                           const std::string& body);

// JSON-over-HTTP client for the two-endpoint wire protocol:
//   POST /v1/complete {model, prompt, max_new_tokens, stop, temperature:0}
//     -> {text, finish_reason}
//   POST /v1/score {model, context, continuation}
//     -> {total_logprob, token_count}
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  Completion complete(const CompletionSpec& spec) override;
  Score score(const ScoreSpec& spec) override;

 private:
  HttpBackendConfig config_;
};

// Client for the external machine-translation endpoint:
//   POST /v1/translate {text, source_lang, target_lang} -> {text}
class MtClient {
 public:
  explicit MtClient(HttpBackendConfig config) : config_(std::move(config)) {}
  std::string translate(const std::string& text, const std::string& source_lang,
                        const std::string& target_lang = "en");
  const std::string& model() const { return config_.model; }

 private:
  HttpBackendConfig config_;
};

}  // namespace selftrans
