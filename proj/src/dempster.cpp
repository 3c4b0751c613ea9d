#include "evr/dempster.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "evr/error.hpp"

namespace evr {

namespace {

// Guards the division by 1 - K.
constexpr double kConflictEpsilon = 1e-12;

void require_same_frame(const MassFunction& a, const MassFunction& b) {
  if (!(a.frame() == b.frame())) throw FrameMismatch();
}

}  // namespace

double conflict(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  double k = 0.0;
  for (const auto& a : m1.focals())
    for (const auto& b : m2.focals())
      if ((a.set & b.set).empty()) k += a.mass * b.mass;
  return k;
}

MassFunction combine(const MassFunction& m1, const MassFunction& m2) {
  require_same_frame(m1, m2);
  if (m2.is_vacuous()) return m1;
  if (m1.is_vacuous()) return m2;

  std::vector<FocalMass> joint;
  joint.reserve(m1.focals().size() * m2.focals().size());
  double k = 0.0;
  for (const auto& a : m1.focals()) {
    for (const auto& b : m2.focals()) {
      const auto c = a.set & b.set;
      const double p = a.mass * b.mass;
      if (c.empty())
        k += p;
      else
        joint.push_back({c, p});
    }
  }
  if (1.0 - k <= kConflictEpsilon) throw TotalConflict(k);

  const double scale = 1.0 / (1.0 - k);
  // Sum exactly-equal sets first so the normalization sees merged masses.
  std::sort(joint.begin(), joint.end(), [](const FocalMass& x, const FocalMass& y) { return x.set < y.set; });
  std::vector<FocalMass> merged;
  for (const auto& j : joint) {
    if (!merged.empty() && merged.back().set == j.set)
      merged.back().mass += j.mass;
    else
      merged.push_back(j);
  }
  double total = 0.0;
  for (auto& m : merged) {
    m.mass *= scale;
    total += m.mass;
  }
  // Absorb rounding so the result sums to 1 exactly in the mass check.
  for (auto& m : merged) m.mass /= total;
  return MassFunction(m1.frame(), std::move(merged));
}

MassFunction combine_all(std::span<const MassFunction> ms) {
  if (ms.empty()) throw InvalidArgument("combine_all needs at least one mass function");
  MassFunction acc = ms.front();
  for (const auto& m : ms.subspan(1)) acc = combine(acc, m);
  return acc;
}

namespace {

MassFunction source_masses(const Frame& frame, const std::vector<KnowledgeTerm>& terms) {
  if (terms.empty()) throw InvalidArgument("knowledge source needs at least one expected-feature term");
  double committed = 0.0;
  std::vector<FocalMass> entries;
  std::unordered_set<std::string> names;
  for (const auto& t : terms) {
    if (t.set.empty()) throw InvalidArgument("knowledge term '" + t.proposition + "' has an empty set");
    if (t.set == frame.theta())
      throw InvalidArgument("knowledge term '" + t.proposition + "' covers the whole frame");
    if (!(t.mass >= 0.0 && t.mass <= 1.0))
      throw InvalidArgument("knowledge term '" + t.proposition + "' has mass outside [0, 1]");
    if (!names.insert(t.proposition).second)
      throw InvalidArgument("duplicate knowledge term: " + t.proposition);
    committed += t.mass;
    entries.push_back({t.set, t.mass});
  }
  if (committed > 1.0 + kMassTolerance)
    throw InvalidArgument("knowledge source masses sum to " + std::to_string(committed) + ", above 1");
  entries.push_back({frame.theta(), std::max(0.0, 1.0 - committed)});
  return MassFunction(frame, std::move(entries));
}

}  // namespace

KnowledgeSource::KnowledgeSource(std::string hypothesis, Frame frame, std::vector<KnowledgeTerm> terms)
    : hypothesis_(std::move(hypothesis)), terms_(std::move(terms)), masses_(source_masses(frame, terms_)) {}

MassFunction VerificationResult::as_simple_support() const {
  const Frame frame({hypothesis.empty() ? std::string("o") : hypothesis, "not-" + hypothesis});
  return simple_support(frame, FocalSet::single(0), support);
}

VerificationResult verify(const MassFunction& evidence, const KnowledgeSource& source) {
  if (!(evidence.frame() == source.frame())) throw FrameMismatch();
  double support = 0.0;
  for (const auto& t : source.terms()) support += t.mass * belief(evidence, t.set);
  return {source.hypothesis(), std::clamp(support, 0.0, 1.0)};
}

void SecondLevelSource::validate() const {
  double total = lower_weight;
  if (!(lower_weight >= 0.0)) throw InvalidArgument("second-level weights must be non-negative");
  for (const auto& [name, w] : evidence_weights) {
    if (!(w >= 0.0)) throw InvalidArgument("second-level weight for '" + name + "' is negative");
    total += w;
  }
  if (total > 1.0 + kMassTolerance)
    throw InvalidArgument("second-level weights sum to " + std::to_string(total) + ", above 1");
  if (evidence_weights.size() > 5) throw InvalidArgument("at most five second-level propositions are supported");
}

VerificationResult hierarchical_verify(const VerificationResult& lower, std::span<const SecondLevelEvidence> extra,
                                       const SecondLevelSource& source) {
  source.validate();
  const std::string lower_name = "lower:" + lower.hypothesis;
  std::vector<Feature> features{Feature::boolean(lower_name)};
  for (const auto& [name, w] : source.evidence_weights) features.push_back(Feature::boolean(name));
  const FeatureSpace space(std::move(features));
  const Frame& frame = space.frame();

  std::vector<MassFunction> pieces{simple_support(frame, space.cylinder(lower_name, "yes"), lower.support)};
  std::vector<KnowledgeTerm> terms;
  if (source.lower_weight > 0.0)
    terms.push_back({lower_name, space.cylinder(lower_name, "yes"), source.lower_weight});
  for (const auto& [name, w] : source.evidence_weights) {
    auto it = std::find_if(extra.begin(), extra.end(), [&](const SecondLevelEvidence& e) { return e.proposition == name; });
    if (it == extra.end()) throw InvalidArgument("no second-level evidence for '" + name + "'");
    if (!(it->belief >= 0.0 && it->belief <= 1.0))
      throw InvalidArgument("second-level belief for '" + name + "' lies outside [0, 1]");
    const auto set = space.cylinder(name, "yes");
    pieces.push_back(simple_support(frame, set, it->belief));
    if (w > 0.0) terms.push_back({name, set, w});
  }
  if (terms.empty()) return {source.hypothesis, 0.0};

  const auto evidence = combine_all(pieces);
  auto result = verify(evidence, KnowledgeSource(source.hypothesis, frame, std::move(terms)));
  return result;
}

}  // namespace evr
