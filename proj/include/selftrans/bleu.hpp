#pragma once

#include <array>
#include <string>
#include <vector>

namespace selftrans {

// Corpus BLEU over a single reference per hypothesis.
//
// Tokenizer: split on whitespace, then peel leading/trailing ASCII
// punctuation characters into single-character tokens; interior punctuation
// stays attached; case is preserved.
//
// Smoothing: precision floor eps = 1e-9 on orders with hypothesis n-grams
// but no matches. Orders with no hypothesis n-grams at all (corpus shorter
// than n tokens) count as vacuously perfect, which keeps BLEU(h, h) = 100
// for corpora of any length.
struct BleuScore {
  double score = 0.0;                      // [0, 100]
  std::array<double, 4> precisions{};      // smoothed, in [eps, 1]
  double brevity_penalty = 1.0;            // (0, 1]
  long hyp_len = 0;
  long ref_len = 0;
  std::array<long, 4> matches{};
  std::array<long, 4> totals{};
};

constexpr double kBleuEpsilon = 1e-9;

std::vector<std::string> bleu_tokenize(const std::string& text);

BleuScore corpus_bleu(const std::vector<std::string>& hypotheses,
                      const std::vector<std::string>& references);

}  // namespace selftrans
