#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selftrans/http_backend.hpp"

namespace selftrans {

// Score reported by the external neural scorer; never synthesized locally.
struct CometScore {
  double score = 0.0;
  std::string scorer_model_id;
};

// Sends (source, hypothesis, reference) triples to the scorer endpoint:
//   POST /v1/comet {triples:[{src,hyp,ref}]} -> {score, model_id}
// Mismatched list lengths are an error; an unconfigured or unreachable
// endpoint yields nullopt so reports mark the metric unavailable.
std::optional<CometScore> comet_score(const std::vector<std::string>& sources,
                                      const std::vector<std::string>& hypotheses,
                                      const std::vector<std::string>& references,
                                      const HttpBackendConfig& scorer_endpoint);

}  // namespace selftrans
