#pragma once

#include <map>
#include <string>
#include <vector>

namespace evr::bayes {

/// Probability in [0, 1]. Construction throws InvalidArgument otherwise.
class Probability {
 public:
  explicit Probability(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Odds P/(1-P); finite and non-negative.
class Odds {
 public:
  explicit Odds(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Likelihood ratios for evidence known true (lambda) and known false
/// (lambda_bar). Both strictly positive.
struct LikelihoodPair {
  double lambda_true = 1.0;
  double lambda_false = 1.0;

  void validate() const;

  bool operator==(const LikelihoodPair&) const = default;
};

enum class Branch { evidence_true, evidence_false };

Odds prob_to_odds(Probability p);
Probability odds_to_prob(Odds o);

/// lambda * O or lambda_bar * O.
Odds posterior_odds(Odds prior, const LikelihoodPair& pair, Branch branch);

/// P(H|E') = P(H|E) P(E|E') + P(H|not E) (1 - P(E|E')).
Probability soft_posterior(Probability p_given_e, Probability p_given_not_e, Probability certainty);

/// O(H|E')/O(H). Throws InvalidArgument when the prior odds are zero.
double effective_lambda(Odds prior, Odds posterior);

/// Effective likelihood ratio of one uncertain observation.
double effective_lambda(Odds prior, const LikelihoodPair& pair, Probability certainty);

struct Hypothesis {
  std::string label;
  double prior = 0.0;

  bool operator==(const Hypothesis&) const = default;
};

/// Priors over an exhaustive hypothesis set and per-hypothesis, per-feature
/// likelihood pairs.
struct BayesConfig {
  std::vector<Hypothesis> hypotheses;
  std::map<std::string, std::map<std::string, LikelihoodPair>> likelihoods;

  /// Priors in [0, 1) summing to 1 within 1e-9, unique labels, valid pairs.
  void validate() const;

  double prior_of(const std::string& hypothesis) const;
  const LikelihoodPair& pair_for(const std::string& hypothesis, const std::string& feature) const;

  bool operator==(const BayesConfig&) const = default;
};

/// Observed feature -> certainty P(E|E') that the feature is present.
using Observations = std::map<std::string, double>;

/// Posterior P(H | E_1', ..., E_n') under conditional independence: the
/// prior odds times the product of each observation's effective lambda.
Probability update(const std::string& hypothesis, const Observations& observations, const BayesConfig& config);

}  // namespace evr::bayes
