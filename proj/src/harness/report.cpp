#include "evr/harness/report.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "evr/error.hpp"

namespace evr::harness {

const MechanismReport& ComparisonReport::of(Mechanism m) const {
  for (const auto& r : mechanisms)
    if (r.mechanism == m) return r;
  throw InvalidArgument("report has no results for method " + std::string(to_string(m)));
}

bool decision_matches(const Fixture& fixture, const decision::Decision& d, Truth truth) {
  if (truth == Truth::other) return d.is_others();
  return d.labels.size() == 1 && d.labels.front() == fixture.label_for(truth);
}

ComparisonReport compare(const Fixture& fixture, const std::vector<Mechanism>& mechanisms, Execution exec) {
  if (mechanisms.empty()) throw InvalidArgument("compare needs at least one method");

  ComparisonReport report{fixture.name, {}, {}};
  std::map<std::string, Truth> truth;
  for (const auto& a : fixture.areas) {
    report.areas.push_back(a.name);
    truth[a.name] = a.truth;
  }

  for (const auto m : mechanisms) {
    MechanismReport r;
    r.mechanism = m;
    r.score_name = final_score_name(m);
    r.scores = final_scores(fixture, m, exec);

    const auto& policy = fixture.policy(m);
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
      r.argmax.push_back(decision::decide_argmax(r.scores[i], policy.tie_epsilon, policy.others_floor));
      r.threshold.push_back(decision::decide_threshold(r.scores[i], policy));
      if (decision_matches(fixture, r.argmax.back(), fixture.areas[i].truth)) ++r.argmax_correct;
    }
    r.adjustment = decision::adjust_thresholds(r.scores, policy);
    for (const auto& s : r.scores) r.adjusted.push_back(decision::decide_threshold(s, r.adjustment.policy));

    for (const auto& h : fixture.hypotheses) {
      std::map<std::string, double> values;
      std::vector<std::pair<std::string, double>> series;
      std::set<std::string> members;
      for (std::size_t i = 0; i < r.scores.size(); ++i) {
        const double v = r.scores[i].scores.at(h.label);
        values[r.scores[i].area] = v;
        series.emplace_back(r.scores[i].area, v);
        if (fixture.areas[i].truth == h.cls) members.insert(r.scores[i].area);
      }
      if (!members.empty() && members.size() < values.size())
        r.margins[h.label] = decision::separation_margin(values, members);
      const auto [lo, hi] = std::minmax_element(series.begin(), series.end(),
                                                [](const auto& a, const auto& b) { return a.second < b.second; });
      if (lo->second < hi->second)
        r.histograms.emplace(h.label, histogram_geometry(series, truth, std::nullopt, fixture.histogram_bins));
    }
    report.mechanisms.push_back(std::move(r));
  }
  return report;
}

namespace {

std::string labels_text(const decision::Decision& d) {
  if (d.is_others()) return "others";
  std::string s;
  for (const auto& l : d.labels) s += (s.empty() ? "" : "+") + l;
  return d.draw ? s + " (draw)" : s;
}

}  // namespace

std::string render_report_text(const ComparisonReport& report) {
  std::string out = "Comparison report: " + report.fixture + "\n";
  for (const auto& r : report.mechanisms) {
    out += fmt::format("\n== {} ({}) ==\n", to_string(r.mechanism), r.score_name);

    ResultTable t{"", report.areas, {}};
    std::vector<std::string> labels;
    for (const auto& [label, v] : r.scores.front().scores) labels.push_back(label);
    const int precision = r.mechanism == Mechanism::weights ? 1 : 3;
    for (const auto& label : labels) {
      TableRow row{r.score_name + "(" + label + ")", {}, precision};
      for (const auto& s : r.scores) row.values.push_back(s.scores.at(label));
      t.rows.push_back(std::move(row));
    }
    out += render_table(t, TableFormat::text);

    out += fmt::format("argmax: {}/{} areas match ground truth\n", r.argmax_correct, r.scores.size());
    for (std::size_t i = 0; i < r.scores.size(); ++i)
      out += fmt::format("  {:<6} argmax={:<16} threshold={:<10} adjusted={}\n", r.scores[i].area,
                         labels_text(r.argmax[i]), labels_text(r.threshold[i]), labels_text(r.adjusted[i]));
    out += "thresholds after adjustment:";
    for (const auto& [label, theta] : r.adjustment.policy.thresholds)
      out += fmt::format(" {}={}", label, format_number(theta, 4));
    out += "\n";
    for (const auto& u : r.adjustment.unresolved) {
      std::string ls;
      for (const auto& l : u.labels) ls += (ls.empty() ? "" : "+") + l;
      out += fmt::format("  unresolved {} [{}]: {}\n", u.area, ls, u.reason);
    }
    for (const auto& [label, margin] : r.margins)
      out += fmt::format("separation margin {}: {}\n", label, format_number(margin, 4));
    for (const auto& [label, g] : r.histograms)
      out += render_histogram(g, fmt::format("{}({}) histogram", r.score_name, label));
  }
  return out;
}

std::string render_report_json(const ComparisonReport& report) {
  using nlohmann::json;
  json doc{{"fixture", report.fixture}, {"areas", report.areas}, {"mechanisms", json::array()}};
  auto decisions = [](const std::vector<decision::Decision>& ds) {
    json arr = json::array();
    for (const auto& d : ds) arr.push_back({{"area", d.area}, {"labels", d.labels}, {"draw", d.draw}});
    return arr;
  };
  for (const auto& r : report.mechanisms) {
    json m;
    m["method"] = to_string(r.mechanism);
    m["score_name"] = r.score_name;
    m["scores"] = json::array();
    for (const auto& s : r.scores) m["scores"].push_back({{"area", s.area}, {"scores", s.scores}});
    m["argmax"] = decisions(r.argmax);
    m["threshold"] = decisions(r.threshold);
    m["adjusted"] = decisions(r.adjusted);
    m["adjusted_thresholds"] = r.adjustment.policy.thresholds;
    m["unresolved"] = json::array();
    for (const auto& u : r.adjustment.unresolved)
      m["unresolved"].push_back({{"area", u.area}, {"labels", u.labels}, {"reason", u.reason}});
    m["margins"] = r.margins;
    m["argmax_correct"] = r.argmax_correct;
    m["histograms"] = json::object();
    for (const auto& [label, g] : r.histograms) {
      json bins = json::array();
      for (const auto& e : g.entries)
        bins.push_back({{"area", e.area}, {"value", e.value}, {"truth", to_string(e.truth)}, {"bin", e.bin}});
      m["histograms"][label] = {
          {"min", g.min}, {"max", g.max}, {"bins", g.bins}, {"bin_width", g.bin_width}, {"entries", bins}};
    }
    doc["mechanisms"].push_back(std::move(m));
  }
  return doc.dump(2) + "\n";
}

}  // namespace evr::harness
