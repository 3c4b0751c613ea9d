#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evr/bayes.hpp"
#include "evr/decision.hpp"
#include "evr/dempster.hpp"
#include "evr/frame.hpp"
#include "evr/weightsum.hpp"

namespace evr::harness {

inline constexpr int kSchemaVersion = 1;

enum class Truth { window, shutter, other };

std::string_view to_string(Truth t);
Truth truth_from_string(std::string_view s);

/// One candidate area: per-feature confidence scores in [0, 1] plus its
/// ground-truth class.
struct AreaFeatureRecord {
  std::string name;
  std::map<std::string, double> scores;
  Truth truth = Truth::other;

  bool operator==(const AreaFeatureRecord&) const = default;
};

/// A mechanism hypothesis label ("sht") and the object class it detects.
struct HypothesisClass {
  std::string label;
  Truth cls = Truth::other;

  bool operator==(const HypothesisClass&) const = default;
};

/// A named proposition over the evidence frame: either a single feature
/// value or the disjunction of other propositions.
struct PropositionSpec {
  std::string feature;
  std::string value;
  std::vector<std::string> any_of;

  bool operator==(const PropositionSpec&) const = default;
};

struct TermSpec {
  std::string proposition;
  double mass = 0.0;

  bool operator==(const TermSpec&) const = default;
};

struct FirstLevelSpec {
  std::string hypothesis;
  std::vector<TermSpec> terms;

  bool operator==(const FirstLevelSpec&) const = default;
};

struct KnowledgeSpec {
  std::vector<Feature> frame;
  std::map<std::string, PropositionSpec> propositions;
  /// Area scores turned into simple support functions and combined.
  std::vector<std::string> evidence;
  std::vector<FirstLevelSpec> first_level;
  std::vector<SecondLevelSource> second_level;
  std::string second_level_note;

  bool operator==(const KnowledgeSpec&) const = default;
};

struct BayesSpec {
  std::string status;
  std::string note;
  bayes::BayesConfig config;

  bool operator==(const BayesSpec&) const = default;
};

struct PolaritySection {
  std::string sibling_feature;
  weights::PolaritySpec spec;

  bool operator==(const PolaritySection&) const = default;
};

enum class Mechanism { ds, bayes, weights };

std::string_view to_string(Mechanism m);
Mechanism mechanism_from_string(std::string_view s);
inline constexpr Mechanism kAllMechanisms[] = {Mechanism::ds, Mechanism::bayes, Mechanism::weights};

/// Published rows per mechanism, keyed by row label, aligned to area order.
using ReferenceRows = std::map<std::string, std::vector<double>>;

/// One experiment: candidate areas and every mechanism's parameters.
struct Fixture {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string description;
  std::vector<std::string> features;
  std::vector<HypothesisClass> hypotheses;
  std::vector<AreaFeatureRecord> areas;
  KnowledgeSpec knowledge;
  BayesSpec bayes;
  PolaritySection polarity;
  std::map<Mechanism, decision::DecisionPolicy> decision;
  std::size_t histogram_bins = 40;
  std::map<Mechanism, ReferenceRows> reference;

  bool operator==(const Fixture&) const = default;

  const AreaFeatureRecord& area(std::string_view name) const;
  const decision::DecisionPolicy& policy(Mechanism m) const;
  /// Hypothesis label whose class is `cls`; throws ValidationError if none.
  const std::string& label_for(Truth cls) const;
  /// Copy restricted to the named areas (reference rows restricted too).
  Fixture subset(const std::vector<std::string>& area_names) const;
};

/// Parses and validates a fixture document. Throws ValidationError naming the
/// offending field (and area, for score errors).
Fixture parse_fixture(std::string_view json_text);

/// Loads a path, or the embedded House.sri fixture for "builtin:house".
Fixture load_fixture(const std::filesystem::path& path);

std::string serialize_fixture(const Fixture& fixture);

/// Raw JSON of the embedded House.sri fixture.
std::string_view house_fixture_json();
Fixture house_fixture();

/// Randomly generated fixture with the House.sri parameter blocks; scores
/// follow the class-typical feature patterns. Deterministic for a seed.
Fixture make_synthetic_fixture(std::uint64_t seed, std::size_t windows, std::size_t shutters, std::size_t others);

}  // namespace evr::harness
