#pragma once

// Randomized invariant checks for subjective-Bayes updating, shared by the
// unit tests and the acceptance suite. Each check returns the number of
// failing cases.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "evr/bayes.hpp"

namespace evr::bayes::props {

struct RandomCase {
  BayesConfig config;
  std::vector<std::string> features;
  Observations low;   // pointwise <= high
  Observations high;
};

/// Config over {h, rest} with 1..6 features, lambda >= 1 >= lambda_bar.
inline RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> nf(1, 6);
  RandomCase rc;
  const double prior = 0.01 + 0.97 * u(rng);
  rc.config.hypotheses = {{"h", prior}, {"rest", 1.0 - prior}};
  const int n = nf(rng);
  for (int i = 0; i < n; ++i) {
    const auto name = "f" + std::to_string(i);
    rc.features.push_back(name);
    rc.config.likelihoods["h"][name] = {1.0 + 9.0 * u(rng), 0.05 + 0.95 * u(rng)};
    const double a = u(rng), b = u(rng);
    rc.low[name] = std::min(a, b);
    rc.high[name] = std::max(a, b);
  }
  return rc;
}

/// odds_to_prob(prob_to_odds(p)) == p.
inline int check_round_trip(std::mt19937_64& rng, int cases) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const double p = u(rng);
    if (std::abs(odds_to_prob(prob_to_odds(Probability(p))).value() - p) > 1e-12) ++failures;
  }
  return failures;
}

/// The posterior does not depend on the order evidence is folded in: the
/// library result equals a product of per-feature ratios taken in a random
/// order, and maps built in different insertion orders agree.
inline int check_permutation_invariance(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    auto rc = random_case(rng);
    const double p = update("h", rc.high, rc.config).value();

    auto order = rc.features;
    std::shuffle(order.begin(), order.end(), rng);
    Observations shuffled;
    for (const auto& f : order) shuffled.emplace(f, rc.high.at(f));
    const auto prior = prob_to_odds(Probability(rc.config.prior_of("h")));
    double odds = prior.value();
    for (const auto& f : order)
      odds *= effective_lambda(prior, rc.config.pair_for("h", f), Probability(rc.high.at(f)));
    const double manual = odds / (1.0 + odds);

    if (std::abs(update("h", shuffled, rc.config).value() - p) > 1e-12 || std::abs(manual - p) > 1e-12) ++failures;
  }
  return failures;
}

/// With certainty 1 everywhere the update is the closed form prod(lambda) * O(H).
inline int check_certainty_one_reduction(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    auto rc = random_case(rng);
    Observations certain;
    double odds = rc.config.prior_of("h") / (1.0 - rc.config.prior_of("h"));
    for (const auto& f : rc.features) {
      certain[f] = 1.0;
      odds *= rc.config.pair_for("h", f).lambda_true;
    }
    const double expected = odds / (1.0 + odds);
    if (std::abs(update("h", certain, rc.config).value() - expected) > 1e-9) ++failures;
  }
  return failures;
}

/// Pointwise-higher certainties never give a lower posterior when every
/// feature confirms (lambda >= 1 >= lambda_bar).
inline int check_pointwise_dominance(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    auto rc = random_case(rng);
    if (update("h", rc.high, rc.config).value() + 1e-12 < update("h", rc.low, rc.config).value()) ++failures;
  }
  return failures;
}

}  // namespace evr::bayes::props
