#include "selftrans/http_backend.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {
using json = nlohmann::json;
}

std::string http_post_json(const HttpBackendConfig& config, const std::string& path,
                           const std::string& body) {
  if (config.url.empty())
    throw BackendError(BackendError::Kind::config, "backend url is not configured");
  int attempts = 0;
  std::string last_error;
  while (attempts < std::max(1, config.retries)) {
    ++attempts;
    httplib::Client client(config.url);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    auto res = client.Post(path, body, "application/json");
    if (res) {
      if (res->status >= 200 && res->status < 300) return res->body;
      if (res->status >= 400 && res->status < 500)
        throw BackendError(BackendError::Kind::server,
                           "server rejected " + path + " (" + std::to_string(res->status) +
                               "): " + res->body,
                           attempts);
      last_error = "status " + std::to_string(res->status) + ": " + res->body;
    } else {
      last_error = httplib::to_string(res.error());
    }
    if (attempts < std::max(1, config.retries)) {
      auto delay = std::chrono::milliseconds(config.backoff_base_ms * (1 << (attempts - 1)));
      std::this_thread::sleep_for(delay);
    }
  }
  throw BackendError(BackendError::Kind::transport,
                     "transport failure on " + config.url + path + " after " +
                         std::to_string(attempts) + " attempts: " + last_error,
                     attempts);
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {}

Completion HttpBackend::complete(const CompletionSpec& spec) {
  validate_spec(spec);
  json req = {{"model", config_.model},
              {"prompt", spec.prompt},
              {"max_new_tokens", spec.max_new_tokens},
              {"temperature", 0}};
  if (spec.stop) req["stop"] = *spec.stop;
  std::string body = http_post_json(config_, "/v1/complete", req.dump());
  json res;
  try {
    res = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(BackendError::Kind::server,
                       std::string("bad completion response: ") + e.what());
  }
  if (!res.contains("text") || !res["text"].is_string())
    throw BackendError(BackendError::Kind::server, "completion response missing text");
  Completion out;
  out.text = res["text"].get<std::string>();
  std::string finish = res.value("finish_reason", "stop");
  out.finish_reason = finish == "length" ? FinishReason::length : FinishReason::stop;
  // Stop sequences are exclusive regardless of what the server returned.
  if (spec.stop) {
    auto pos = out.text.find(*spec.stop);
    if (pos != std::string::npos) {
      out.text = out.text.substr(0, pos);
      out.finish_reason = FinishReason::stop;
    }
  }
  return out;
}

Score HttpBackend::score(const ScoreSpec& spec) {
  validate_spec(spec);
  json req = {{"model", config_.model},
              {"context", spec.context},
              {"continuation", spec.continuation}};
  std::string body = http_post_json(config_, "/v1/score", req.dump());
  json res;
  try {
    res = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(BackendError::Kind::server,
                       std::string("bad score response: ") + e.what());
  }
  if (!res.contains("total_logprob") || !res["total_logprob"].is_number())
    throw BackendError(BackendError::Kind::server, "score response missing total_logprob");
  Score out;
  out.total_logprob = res["total_logprob"].get<double>();
  out.token_count = std::max(1, res.value("token_count", 1));
  return out;
}

std::string MtClient::translate(const std::string& text, const std::string& source_lang,
                                const std::string& target_lang) {
  if (config_.url.empty())
    throw BackendError(BackendError::Kind::config,
                       "external MT endpoint is not configured");
  json req = {{"text", text}, {"source_lang", source_lang}, {"target_lang", target_lang}};
  std::string body = http_post_json(config_, "/v1/translate", req.dump());
  json res;
  try {
    res = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(BackendError::Kind::server,
                       std::string("bad translate response: ") + e.what());
  }
  if (!res.contains("text") || !res["text"].is_string())
    throw BackendError(BackendError::Kind::server, "translate response missing text");
  return res["text"].get<std::string>();
}

}  // namespace selftrans
