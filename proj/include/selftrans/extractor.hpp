#pragma once

#include <string>

namespace selftrans {

// Pulls the final numeric answer out of a chain-of-thought generation.
// The last regex match wins; normalization strips thousands separators,
// leading currency symbols, a leading '+' and a trailing period. Sign and
// decimal point are kept. Comparison trims a trailing ".0*" suffix so
// "11.0" equals "11" while "11.5" does not.
class AnswerExtractor {
 public:
  static constexpr const char* kDefaultPattern =
      R"([-+]?[0-9][0-9,]*(\.[0-9]+)?)";

  explicit AnswerExtractor(std::string pattern = kDefaultPattern);

  // Last numeric token of the generation, normalized; "" when none found.
  std::string extract(const std::string& generation) const;

  static std::string normalize(const std::string& token);
  // Normalized comparison with the trailing-zero trim applied to both sides.
  static bool answers_equal(const std::string& extracted, const std::string& gold);
  static std::string canonical(const std::string& token);

  const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
};

}  // namespace selftrans
