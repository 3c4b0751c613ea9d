#include "evr/bayes.hpp"

#include <cmath>
#include <set>

#include "evr/error.hpp"

namespace evr::bayes {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) throw InvalidArgument("probability outside [0, 1]: " + std::to_string(value));
}

Odds::Odds(double value) : value_(value) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw InvalidArgument("odds must be finite and non-negative: " + std::to_string(value));
}

void LikelihoodPair::validate() const {
  if (!(lambda_true > 0.0) || !(lambda_false > 0.0) || !std::isfinite(lambda_true) || !std::isfinite(lambda_false))
    throw InvalidArgument("likelihood ratios must be finite and positive");
}

Odds prob_to_odds(Probability p) {
  if (p.value() >= 1.0) throw InvalidArgument("probability 1 has infinite odds");
  return Odds(p.value() / (1.0 - p.value()));
}

Probability odds_to_prob(Odds o) { return Probability(o.value() / (o.value() + 1.0)); }

Odds posterior_odds(Odds prior, const LikelihoodPair& pair, Branch branch) {
  pair.validate();
  const double lambda = branch == Branch::evidence_true ? pair.lambda_true : pair.lambda_false;
  return Odds(lambda * prior.value());
}

Probability soft_posterior(Probability p_given_e, Probability p_given_not_e, Probability certainty) {
  const double c = certainty.value();
  const double p = p_given_e.value() * c + p_given_not_e.value() * (1.0 - c);
  return Probability(std::fmin(1.0, std::fmax(0.0, p)));
}

double effective_lambda(Odds prior, Odds posterior) {
  if (prior.value() == 0.0) throw InvalidArgument("effective likelihood ratio undefined for zero prior odds");
  return posterior.value() / prior.value();
}

double effective_lambda(Odds prior, const LikelihoodPair& pair, Probability certainty) {
  const auto p_true = odds_to_prob(posterior_odds(prior, pair, Branch::evidence_true));
  const auto p_false = odds_to_prob(posterior_odds(prior, pair, Branch::evidence_false));
  const auto p_soft = soft_posterior(p_true, p_false, certainty);
  return effective_lambda(prior, prob_to_odds(p_soft));
}

void BayesConfig::validate() const {
  if (hypotheses.empty()) throw InvalidArgument("bayes config needs at least one hypothesis");
  std::set<std::string> labels;
  double total = 0.0;
  for (const auto& h : hypotheses) {
    if (!labels.insert(h.label).second) throw InvalidArgument("duplicate hypothesis: " + h.label);
    if (!(h.prior >= 0.0 && h.prior < 1.0 + 1e-12))
      throw InvalidArgument("prior for '" + h.label + "' outside [0, 1]");
    total += h.prior;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("priors sum to " + std::to_string(total) + ", expected 1");
  for (const auto& [hyp, pairs] : likelihoods) {
    if (!labels.contains(hyp)) throw InvalidArgument("likelihoods given for unknown hypothesis: " + hyp);
    for (const auto& [feature, pair] : pairs) pair.validate();
  }
}

double BayesConfig::prior_of(const std::string& hypothesis) const {
  for (const auto& h : hypotheses)
    if (h.label == hypothesis) return h.prior;
  throw InvalidArgument("unknown hypothesis: " + hypothesis);
}

const LikelihoodPair& BayesConfig::pair_for(const std::string& hypothesis, const std::string& feature) const {
  auto h = likelihoods.find(hypothesis);
  if (h != likelihoods.end()) {
    auto f = h->second.find(feature);
    if (f != h->second.end()) return f->second;
  }
  throw InvalidArgument("missing likelihood pair for hypothesis '" + hypothesis + "', feature '" + feature + "'");
}

Probability update(const std::string& hypothesis, const Observations& observations, const BayesConfig& config) {
  const double prior = config.prior_of(hypothesis);
  if (prior >= 1.0) throw InvalidArgument("prior of '" + hypothesis + "' is 1; odds are infinite");
  const auto prior_odds = prob_to_odds(Probability(prior));
  if (observations.empty()) return Probability(prior);
  if (prior == 0.0) {
    for (const auto& [feature, certainty] : observations) config.pair_for(hypothesis, feature);
    return Probability(0.0);
  }

  // std::map iteration order makes the product order fixed.
  double odds = prior_odds.value();
  for (const auto& [feature, certainty] : observations)
    odds *= effective_lambda(prior_odds, config.pair_for(hypothesis, feature), Probability(certainty));
  return odds_to_prob(Odds(odds));
}

}  // namespace evr::bayes
