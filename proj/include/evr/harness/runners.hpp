#pragma once

#include <map>
#include <string>
#include <vector>

#include "evr/decision.hpp"
#include "evr/dempster.hpp"
#include "evr/harness/fixture.hpp"
#include "evr/harness/parallel.hpp"

namespace evr::harness {

using ScoreMap = std::map<std::string, double>;

struct DsAreaResult {
  std::string area;
  ScoreMap belief;        ///< Bel(h): first-level verification
  ScoreMap belief_prime;  ///< Bel'(h): after the second-level source
};

struct BayesAreaResult {
  std::string area;
  ScoreMap posterior;  ///< P'(h)
};

struct WeightAreaResult {
  std::string area;
  ScoreMap weight;        ///< WT(h)
  ScoreMap weight_prime;  ///< WT'(h), with sibling support
};

/// The evidence frame, propositions and knowledge sources of a fixture,
/// compiled once and shared read-only by every area evaluation.
class DsModel {
 public:
  explicit DsModel(const Fixture& fixture);

  const FeatureSpace& space() const noexcept { return space_; }
  FocalSet proposition(const std::string& name) const;

  /// Combined evidence m_e of one area.
  MassFunction evidence(const AreaFeatureRecord& area) const;
  DsAreaResult evaluate(const AreaFeatureRecord& area) const;

 private:
  FeatureSpace space_;
  std::map<std::string, FocalSet> propositions_;
  std::vector<std::string> evidence_;
  std::vector<KnowledgeSource> sources_;
  std::map<std::string, SecondLevelSource> second_level_;
};

std::vector<DsAreaResult> run_ds(const Fixture& fixture, Execution exec = Execution::parallel);
std::vector<BayesAreaResult> run_bayes(const Fixture& fixture, Execution exec = Execution::parallel);
std::vector<WeightAreaResult> run_weights(const Fixture& fixture, Execution exec = Execution::parallel);

/// Final per-area scores of a mechanism (Bel', P' or WT'), in area order.
std::vector<decision::LabeledScores> final_scores(const Fixture& fixture, Mechanism m,
                                                  Execution exec = Execution::parallel);

/// Name of the final score, e.g. "Bel'".
std::string final_score_name(Mechanism m);

}  // namespace evr::harness
