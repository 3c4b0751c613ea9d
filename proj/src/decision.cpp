#include "evr/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evr/error.hpp"

namespace evr::decision {

void DecisionPolicy::validate() const {
  if (!(tie_epsilon >= 0.0)) throw InvalidArgument("tie epsilon must be non-negative");
  for (const auto& [label, theta] : thresholds)
    if (!std::isfinite(theta)) throw InvalidArgument("threshold for '" + label + "' is not finite");
  if (others_floor && !std::isfinite(*others_floor)) throw InvalidArgument("others floor is not finite");
}

namespace {

void check_scores(const LabeledScores& s) {
  if (s.scores.empty()) throw InvalidArgument("area '" + s.area + "' has no scores");
  for (const auto& [label, v] : s.scores)
    if (!std::isfinite(v)) throw InvalidArgument("area '" + s.area + "' has a non-finite score for " + label);
}

}  // namespace

Decision decide_argmax(const LabeledScores& s, double epsilon, std::optional<double> others_floor) {
  check_scores(s);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : s.scores) best = std::max(best, v);

  Decision d{s.area, {}, false};
  if (others_floor && best < *others_floor) return d;
  for (const auto& [label, v] : s.scores)
    if (best - v <= epsilon) d.labels.push_back(label);
  d.draw = d.labels.size() > 1;
  return d;
}

Decision decide_threshold(const LabeledScores& s, const DecisionPolicy& policy) {
  check_scores(s);
  Decision d{s.area, {}, false};
  for (const auto& [label, v] : s.scores) {
    auto it = policy.thresholds.find(label);
    if (it == policy.thresholds.end()) throw InvalidArgument("no threshold for label '" + label + "'");
    if (v > it->second) d.labels.push_back(label);
  }
  return d;
}

Decision decide(const LabeledScores& s, const DecisionPolicy& policy) {
  policy.validate();
  return policy.mode == Mode::argmax ? decide_argmax(s, policy.tie_epsilon, policy.others_floor)
                                     : decide_threshold(s, policy);
}

ThresholdAdjustment adjust_thresholds(const std::vector<LabeledScores>& all_scores, const DecisionPolicy& initial) {
  if (initial.mode != Mode::threshold) throw InvalidArgument("threshold adjustment needs a threshold-mode policy");
  initial.validate();

  ThresholdAdjustment out{initial, {}};
  const double eps = initial.tie_epsilon;

  struct Requirement {
    std::string area;
    double score;
    std::vector<std::string> labels;
  };
  std::map<std::string, std::vector<Requirement>> required;
  // Lowest score of each label over areas where it is the best assigned label.
  std::map<std::string, double> protected_floor;

  for (const auto& s : all_scores) {
    const auto d = decide_threshold(s, initial);
    if (d.labels.empty()) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& l : d.labels) best = std::max(best, s.scores.at(l));
    std::vector<std::string> top;
    for (const auto& l : d.labels)
      if (best - s.scores.at(l) <= eps) top.push_back(l);

    for (const auto& l : top) {
      auto [it, inserted] = protected_floor.try_emplace(l, s.scores.at(l));
      if (!inserted) it->second = std::min(it->second, s.scores.at(l));
    }
    if (!d.is_conflict()) continue;
    if (top.size() > 1) {
      out.unresolved.push_back({s.area, d.labels, "exact score tie between top labels"});
      continue;
    }
    for (const auto& l : d.labels)
      if (l != top.front()) required[l].push_back({s.area, s.scores.at(l), d.labels});
  }

  for (auto& [label, reqs] : required) {
    const auto floor_it = protected_floor.find(label);
    const double limit =
        floor_it == protected_floor.end() ? std::numeric_limits<double>::infinity() : floor_it->second;
    double& theta = out.policy.thresholds.at(label);
    double raise = theta;
    for (const auto& r : reqs)
      if (r.score < limit) raise = std::max(raise, r.score);
    for (const auto& r : reqs)
      if (r.score > raise)
        out.unresolved.push_back({r.area, r.labels,
                                  "raising threshold of '" + label + "' would drop it where it is the best label"});
    theta = raise;
  }
  std::stable_sort(out.unresolved.begin(), out.unresolved.end(),
                   [](const UnresolvedConflict& a, const UnresolvedConflict& b) { return a.area < b.area; });
  return out;
}

double separation_margin(const std::map<std::string, double>& values, const std::set<std::string>& truth) {
  if (truth.empty()) throw InvalidArgument("separation margin needs at least one true-class area");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t matched = 0;
  for (const auto& [area, v] : values) {
    if (truth.contains(area)) {
      lo = std::min(lo, v);
      ++matched;
    } else {
      hi = std::max(hi, v);
    }
  }
  if (matched != truth.size()) throw InvalidArgument("true-class area missing from the score map");
  if (matched == values.size()) throw InvalidArgument("separation margin needs at least one non-class area");
  return lo - hi;
}

}  // namespace evr::decision
