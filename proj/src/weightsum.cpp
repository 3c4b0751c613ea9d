#include "evr/weightsum.hpp"

#include <cmath>

#include "evr/error.hpp"

namespace evr::weights {

void PolaritySpec::validate() const {
  for (const auto& [hyp, pol] : hypotheses)
    for (const auto& f : pol.supporting)
      if (pol.opposing.contains(f))
        throw InvalidArgument("feature '" + f + "' both supports and opposes '" + hyp + "'");
}

const Polarity& PolaritySpec::of(const std::string& hypothesis) const {
  auto it = hypotheses.find(hypothesis);
  if (it == hypotheses.end()) throw InvalidArgument("no polarity for hypothesis: " + hypothesis);
  return it->second;
}

namespace {

double score_of(const FeatureScores& scores, const std::string& feature) {
  auto it = scores.find(feature);
  if (it == scores.end()) throw InvalidArgument("missing feature score: " + feature);
  if (!std::isfinite(it->second)) throw InvalidArgument("non-finite feature score: " + feature);
  return it->second;
}

}  // namespace

WeightScore weight_score(const FeatureScores& scores, const PolaritySpec& spec, const std::string& hypothesis) {
  const auto& pol = spec.of(hypothesis);
  double total = 0.0;
  for (const auto& f : pol.supporting) total += score_of(scores, f);
  for (const auto& f : pol.opposing) total -= score_of(scores, f);
  return {hypothesis, total};
}

WeightScore with_sibling(const WeightScore& base, double sibling) {
  if (!std::isfinite(sibling) || !std::isfinite(base.value)) throw InvalidArgument("weights must be finite");
  return {base.hypothesis, base.value + sibling};
}

}  // namespace evr::weights
