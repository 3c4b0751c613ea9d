#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evr::decision {

/// Scores of one candidate area, keyed by label. The unit depends on the
/// mechanism that produced them (belief, probability or weight).
struct LabeledScores {
  std::string area;
  std::map<std::string, double> scores;
};

enum class Mode { argmax, threshold };

struct DecisionPolicy {
  Mode mode = Mode::argmax;
  std::map<std::string, double> thresholds;  ///< threshold mode only
  double tie_epsilon = 1e-9;
  /// Argmax mode: when set, an area whose best score is below the floor is
  /// assigned no label ("others").
  std::optional<double> others_floor;

  void validate() const;

  bool operator==(const DecisionPolicy&) const = default;
};

/// Labels assigned to one area. An empty label list means "others".
struct Decision {
  std::string area;
  std::vector<std::string> labels;
  bool draw = false;

  bool is_others() const noexcept { return labels.empty(); }
  bool is_conflict() const noexcept { return labels.size() > 1; }
};

/// Label with the highest score. Every label within `epsilon` of the best is
/// reported and the draw flag is set when there is more than one.
Decision decide_argmax(const LabeledScores& s, double epsilon = 1e-9,
                       std::optional<double> others_floor = std::nullopt);

/// Every label whose score is strictly above its threshold.
Decision decide_threshold(const LabeledScores& s, const DecisionPolicy& policy);

/// Dispatches on policy.mode.
Decision decide(const LabeledScores& s, const DecisionPolicy& policy);

struct UnresolvedConflict {
  std::string area;
  std::vector<std::string> labels;
  std::string reason;
};

struct ThresholdAdjustment {
  DecisionPolicy policy;
  std::vector<UnresolvedConflict> unresolved;
};

/// Raises thresholds until multi-label areas keep only their best label.
///
/// For a label that is not the best score in some conflicting area, its
/// threshold is raised to the largest such score that still lies below every
/// score of the label in areas where it is the best assigned label. Conflicts
/// that would need more, and exact ties, are reported and left alone.
/// Thresholds never go down. Applying the result again changes nothing.
ThresholdAdjustment adjust_thresholds(const std::vector<LabeledScores>& all_scores, const DecisionPolicy& initial);

/// min(score over true-class areas) - max(score over the rest). Positive
/// exactly when one threshold separates the class perfectly.
double separation_margin(const std::map<std::string, double>& values, const std::set<std::string>& truth);

}  // namespace evr::decision
