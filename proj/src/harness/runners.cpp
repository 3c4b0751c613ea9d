#include "evr/harness/runners.hpp"

#include "evr/bayes.hpp"
#include "evr/error.hpp"
#include "evr/weightsum.hpp"

namespace evr::harness {

DsModel::DsModel(const Fixture& fixture)
    : space_(fixture.knowledge.frame), evidence_(fixture.knowledge.evidence) {
  const auto& props = fixture.knowledge.propositions;
  for (const auto& [name, p] : props)
    if (p.any_of.empty()) propositions_[name] = space_.cylinder(p.feature, p.value);
  for (const auto& [name, p] : props) {
    if (p.any_of.empty()) continue;
    FocalSet s;
    for (const auto& ref : p.any_of) s = s | propositions_.at(ref);
    propositions_[name] = s;
  }
  for (const auto& fl : fixture.knowledge.first_level) {
    std::vector<KnowledgeTerm> terms;
    for (const auto& t : fl.terms) terms.push_back({t.proposition, proposition(t.proposition), t.mass});
    sources_.emplace_back(fl.hypothesis, space_.frame(), std::move(terms));
  }
  for (const auto& sl : fixture.knowledge.second_level) second_level_[sl.hypothesis] = sl;
}

FocalSet DsModel::proposition(const std::string& name) const {
  auto it = propositions_.find(name);
  if (it == propositions_.end()) throw InvalidArgument("unknown proposition: " + name);
  return it->second;
}

MassFunction DsModel::evidence(const AreaFeatureRecord& area) const {
  std::vector<MassFunction> pieces;
  pieces.reserve(evidence_.size());
  for (const auto& feature : evidence_)
    pieces.push_back(simple_support(space_.frame(), proposition(feature), area.scores.at(feature)));
  if (pieces.empty()) return MassFunction::vacuous(space_.frame());
  return combine_all(pieces);
}

DsAreaResult DsModel::evaluate(const AreaFeatureRecord& area) const {
  DsAreaResult out{area.name, {}, {}};
  const auto m_e = evidence(area);
  for (const auto& source : sources_) {
    const auto lower = verify(m_e, source);
    out.belief[source.hypothesis()] = lower.support;
    auto sl = second_level_.find(source.hypothesis());
    if (sl == second_level_.end()) {
      out.belief_prime[source.hypothesis()] = lower.support;
      continue;
    }
    std::vector<SecondLevelEvidence> extra;
    for (const auto& [feature, w] : sl->second.evidence_weights) extra.push_back({feature, area.scores.at(feature)});
    out.belief_prime[source.hypothesis()] = hierarchical_verify(lower, extra, sl->second).support;
  }
  return out;
}

std::vector<DsAreaResult> run_ds(const Fixture& fixture, Execution exec) {
  const DsModel model(fixture);
  std::vector<DsAreaResult> out(fixture.areas.size());
  for_each_index(out.size(), exec, [&](std::size_t i) { out[i] = model.evaluate(fixture.areas[i]); });
  return out;
}

std::vector<BayesAreaResult> run_bayes(const Fixture& fixture, Execution exec) {
  const auto& config = fixture.bayes.config;
  std::vector<BayesAreaResult> out(fixture.areas.size());
  for_each_index(out.size(), exec, [&](std::size_t i) {
    const auto& area = fixture.areas[i];
    out[i].area = area.name;
    for (const auto& h : fixture.hypotheses) {
      // Observations are the features the hypothesis has likelihood pairs for.
      bayes::Observations obs;
      if (auto it = config.likelihoods.find(h.label); it != config.likelihoods.end())
        for (const auto& [feature, pair] : it->second) obs[feature] = area.scores.at(feature);
      out[i].posterior[h.label] = bayes::update(h.label, obs, config).value();
    }
  });
  return out;
}

std::vector<WeightAreaResult> run_weights(const Fixture& fixture, Execution exec) {
  const auto& pol = fixture.polarity;
  std::vector<WeightAreaResult> out(fixture.areas.size());
  for_each_index(out.size(), exec, [&](std::size_t i) {
    const auto& area = fixture.areas[i];
    out[i].area = area.name;
    const double sibling = pol.sibling_feature.empty() ? 0.0 : area.scores.at(pol.sibling_feature);
    for (const auto& h : fixture.hypotheses) {
      const auto wt = weights::weight_score(area.scores, pol.spec, h.label);
      out[i].weight[h.label] = wt.value;
      out[i].weight_prime[h.label] = weights::with_sibling(wt, sibling).value;
    }
  });
  return out;
}

std::vector<decision::LabeledScores> final_scores(const Fixture& fixture, Mechanism m, Execution exec) {
  std::vector<decision::LabeledScores> out;
  switch (m) {
    case Mechanism::ds:
      for (auto& r : run_ds(fixture, exec)) out.push_back({r.area, r.belief_prime});
      break;
    case Mechanism::bayes:
      for (auto& r : run_bayes(fixture, exec)) out.push_back({r.area, r.posterior});
      break;
    case Mechanism::weights:
      for (auto& r : run_weights(fixture, exec)) out.push_back({r.area, r.weight_prime});
      break;
  }
  return out;
}

std::string final_score_name(Mechanism m) {
  switch (m) {
    case Mechanism::ds:
      return "Bel'";
    case Mechanism::bayes:
      return "P'";
    case Mechanism::weights:
      return "WT'";
  }
  return "";
}

}  // namespace evr::harness
