#include "selftrans/bleu.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "selftrans/util.hpp"

namespace selftrans {

namespace {

bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= '!' && u <= '/') || (u >= ':' && u <= '@') || (u >= '[' && u <= '`') ||
         (u >= '{' && u <= '~');
}

using NgramCounts = std::map<std::vector<std::string>, long>;

NgramCounts ngram_counts(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[gram];
  }
  return counts;
}

}  // namespace

std::vector<std::string> bleu_tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string chunk = text.substr(start, i - start);

    std::size_t lead = 0;
    while (lead < chunk.size() && is_ascii_punct(chunk[lead])) ++lead;
    std::size_t trail = chunk.size();
    while (trail > lead && is_ascii_punct(chunk[trail - 1])) --trail;

    for (std::size_t k = 0; k < lead; ++k) out.push_back(std::string(1, chunk[k]));
    if (trail > lead) out.push_back(chunk.substr(lead, trail - lead));
    for (std::size_t k = trail; k < chunk.size(); ++k)
      out.push_back(std::string(1, chunk[k]));
  }
  return out;
}

BleuScore corpus_bleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size())
    throw DataError("corpus_bleu: " + std::to_string(hypotheses.size()) +
                    " hypotheses vs " + std::to_string(references.size()) +
                    " references");
  if (hypotheses.empty()) throw DataError("corpus_bleu: empty corpus");

  BleuScore b;
  for (std::size_t p = 0; p < hypotheses.size(); ++p) {
    auto hyp = bleu_tokenize(hypotheses[p]);
    auto ref = bleu_tokenize(references[p]);
    b.hyp_len += static_cast<long>(hyp.size());
    b.ref_len += static_cast<long>(ref.size());
    for (int n = 1; n <= 4; ++n) {
      auto hyp_counts = ngram_counts(hyp, n);
      auto ref_counts = ngram_counts(ref, n);
      for (const auto& [gram, count] : hyp_counts) {
        b.totals[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) b.matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    double p;
    if (b.totals[n] == 0) {
      p = 1.0;  // vacuous order
    } else {
      p = static_cast<double>(b.matches[n]) / static_cast<double>(b.totals[n]);
      p = std::max(p, kBleuEpsilon);
    }
    b.precisions[n] = p;
    log_sum += std::log(p);
  }

  if (b.hyp_len > b.ref_len)
    b.brevity_penalty = 1.0;
  else
    b.brevity_penalty =
        std::exp(1.0 - static_cast<double>(b.ref_len) /
                           static_cast<double>(std::max<long>(b.hyp_len, 1)));

  b.score = 100.0 * b.brevity_penalty * std::exp(log_sum / 4.0);
  return b;
}

}  // namespace selftrans
