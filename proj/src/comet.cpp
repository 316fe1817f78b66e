#include "selftrans/comet.hpp"

#include <iostream>

#include <nlohmann/json.hpp>

#include "selftrans/util.hpp"

namespace selftrans {

std::optional<CometScore> comet_score(const std::vector<std::string>& sources,
                                      const std::vector<std::string>& hypotheses,
                                      const std::vector<std::string>& references,
                                      const HttpBackendConfig& scorer_endpoint) {
  if (sources.size() != hypotheses.size() || sources.size() != references.size())
    throw DataError("comet_score: sources/hypotheses/references lengths differ (" +
                    std::to_string(sources.size()) + "/" +
                    std::to_string(hypotheses.size()) + "/" +
                    std::to_string(references.size()) + ")");
  if (sources.empty()) throw DataError("comet_score: empty corpus");
  if (scorer_endpoint.url.empty()) return std::nullopt;

  nlohmann::json triples = nlohmann::json::array();
  for (std::size_t i = 0; i < sources.size(); ++i)
    triples.push_back(
        {{"src", sources[i]}, {"hyp", hypotheses[i]}, {"ref", references[i]}});
  nlohmann::json req = {{"triples", triples}};

  try {
    std::string body = http_post_json(scorer_endpoint, "/v1/comet", req.dump());
    nlohmann::json res = nlohmann::json::parse(body);
    if (!res.contains("score") || !res["score"].is_number()) return std::nullopt;
    CometScore out;
    out.score = res["score"].get<double>();
    out.scorer_model_id = res.value("model_id", "");
    return out;
  } catch (const BackendError& e) {
    std::cerr << "warning: COMET scorer unavailable: " << e.what() << "\n";
    return std::nullopt;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "warning: COMET scorer returned malformed JSON: " << e.what() << "\n";
    return std::nullopt;
  }
}

}  // namespace selftrans
