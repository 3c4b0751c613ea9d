#pragma once

#include <map>
#include <string>
#include <vector>

#include "evr/decision.hpp"
#include "evr/harness/fixture.hpp"
#include "evr/harness/render.hpp"
#include "evr/harness/runners.hpp"

namespace evr::harness {

/// Everything one mechanism produced for a fixture.
struct MechanismReport {
  Mechanism mechanism = Mechanism::ds;
  std::string score_name;
  std::vector<decision::LabeledScores> scores;
  std::vector<decision::Decision> argmax;
  std::vector<decision::Decision> threshold;
  decision::ThresholdAdjustment adjustment;
  std::vector<decision::Decision> adjusted;
  /// Separation margin per hypothesis label.
  std::map<std::string, double> margins;
  /// Auto-range histogram per hypothesis label.
  std::map<std::string, HistogramGeometry> histograms;
  /// Areas whose argmax decision matches their ground truth.
  std::size_t argmax_correct = 0;
};

struct ComparisonReport {
  std::string fixture;
  std::vector<std::string> areas;
  std::vector<MechanismReport> mechanisms;

  const MechanismReport& of(Mechanism m) const;
};

/// Whether a decision assigns exactly the truth's label (none for "other").
bool decision_matches(const Fixture& fixture, const decision::Decision& d, Truth truth);

/// Runs each mechanism, both decision methods, the threshold adjustment,
/// separation margins and histogram geometry. Deterministic.
ComparisonReport compare(const Fixture& fixture, const std::vector<Mechanism>& mechanisms,
                         Execution exec = Execution::parallel);

std::string render_report_text(const ComparisonReport& report);
std::string render_report_json(const ComparisonReport& report);

}  // namespace evr::harness
