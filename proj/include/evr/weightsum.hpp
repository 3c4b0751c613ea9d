#pragma once

#include <map>
#include <set>
#include <string>

namespace evr::weights {

/// Unnormalized weight for one hypothesis. May be negative.
struct WeightScore {
  std::string hypothesis;
  double value = 0.0;
};

struct Polarity {
  std::set<std::string> supporting;
  std::set<std::string> opposing;

  bool operator==(const Polarity&) const = default;
};

/// Which features add to and which subtract from each hypothesis' weight.
struct PolaritySpec {
  std::map<std::string, Polarity> hypotheses;

  /// Throws InvalidArgument when a feature both supports and opposes a hypothesis.
  void validate() const;
  const Polarity& of(const std::string& hypothesis) const;

  bool operator==(const PolaritySpec&) const = default;
};

using FeatureScores = std::map<std::string, double>;

/// Sum of supporting feature scores minus sum of opposing ones. Every feature
/// named by the polarity must be present in `scores`.
WeightScore weight_score(const FeatureScores& scores, const PolaritySpec& spec, const std::string& hypothesis);

WeightScore with_sibling(const WeightScore& base, double sibling);

}  // namespace evr::weights
