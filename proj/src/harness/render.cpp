#include "evr/harness/render.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "evr/error.hpp"

namespace evr::harness {

TableFormat table_format_from_string(std::string_view s) {
  if (s == "text") return TableFormat::text;
  if (s == "csv") return TableFormat::csv;
  throw InvalidArgument("unknown format '" + std::string(s) + "' (expected text or csv)");
}

std::string format_number(double v, int precision) {
  auto s = fmt::format("{:.{}f}", v, precision);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::vector<std::string> area_names(const Fixture& f) {
  std::vector<std::string> out;
  for (const auto& a : f.areas) out.push_back(a.name);
  return out;
}

// Input rows shared by every table: one per feature score.
void add_input_rows(const Fixture& f, const std::string& prefix, int precision, ResultTable& t) {
  for (const auto& feat : f.features) {
    TableRow row{prefix + "(" + feat + ")", {}, precision};
    for (const auto& a : f.areas) row.values.push_back(a.scores.at(feat));
    t.rows.push_back(std::move(row));
  }
}

template <typename R>
TableRow score_row(const std::string& label, const std::vector<R>& results, ScoreMap R::*field,
                   const std::string& hyp, int precision) {
  TableRow row{label, {}, precision};
  for (const auto& r : results) row.values.push_back((r.*field).at(hyp));
  return row;
}

}  // namespace

ResultTable ds_table(const Fixture& f, const std::vector<DsAreaResult>& results) {
  ResultTable t{"Belief values (" + f.name + ")", area_names(f), {}};
  add_input_rows(f, "Bel", 3, t);
  for (const auto& h : f.hypotheses)
    t.rows.push_back(score_row("Bel(" + h.label + ")", results, &DsAreaResult::belief, h.label, 3));
  for (const auto& h : f.hypotheses)
    t.rows.push_back(score_row("Bel'(" + h.label + ")", results, &DsAreaResult::belief_prime, h.label, 3));
  return t;
}

ResultTable bayes_table(const Fixture& f, const std::vector<BayesAreaResult>& results) {
  ResultTable t{"Probability values (" + f.name + ")", area_names(f), {}};
  add_input_rows(f, "P", 3, t);
  for (const auto& h : f.hypotheses)
    t.rows.push_back(score_row("P'(" + h.label + ")", results, &BayesAreaResult::posterior, h.label, 3));
  return t;
}

ResultTable weights_table(const Fixture& f, const std::vector<WeightAreaResult>& results) {
  ResultTable t{"Weights (" + f.name + ")", area_names(f), {}};
  add_input_rows(f, "WT", 1, t);
  for (const auto& h : f.hypotheses)
    t.rows.push_back(score_row("WT(" + h.label + ")", results, &WeightAreaResult::weight, h.label, 1));
  for (const auto& h : f.hypotheses)
    t.rows.push_back(score_row("WT'(" + h.label + ")", results, &WeightAreaResult::weight_prime, h.label, 1));
  return t;
}

ResultTable mechanism_table(const Fixture& fixture, Mechanism m, Execution exec) {
  switch (m) {
    case Mechanism::ds:
      return ds_table(fixture, run_ds(fixture, exec));
    case Mechanism::bayes:
      return bayes_table(fixture, run_bayes(fixture, exec));
    case Mechanism::weights:
      return weights_table(fixture, run_weights(fixture, exec));
  }
  throw InvalidArgument("unknown mechanism");
}

std::optional<ResultTable> reference_table(const Fixture& fixture, Mechanism m) {
  auto it = fixture.reference.find(m);
  if (it == fixture.reference.end() || it->second.empty()) return std::nullopt;
  ResultTable t{"Published reference (" + fixture.name + ")", area_names(fixture), {}};
  const int precision = m == Mechanism::weights ? 1 : 3;
  for (const auto& [label, values] : it->second) t.rows.push_back({label, values, precision});
  return t;
}

std::string render_table(const ResultTable& table, TableFormat format) {
  if (table.columns.empty() || table.rows.empty()) throw InvalidArgument("nothing to render: empty table");
  for (const auto& r : table.rows)
    if (r.values.size() != table.columns.size())
      throw InvalidArgument("row '" + r.label + "' does not match the column count");

  std::string out;
  if (format == TableFormat::csv) {
    out += "metric";
    for (const auto& c : table.columns) out += "," + c;
    out += "\n";
    for (const auto& r : table.rows) {
      out += r.label;
      for (double v : r.values) out += "," + format_number(v, r.precision);
      out += "\n";
    }
    return out;
  }

  std::vector<std::vector<std::string>> cells;
  std::size_t label_width = 0;
  std::vector<std::size_t> widths;
  for (const auto& c : table.columns) widths.push_back(c.size());
  for (const auto& r : table.rows) {
    label_width = std::max(label_width, r.label.size());
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      line.push_back(format_number(r.values[i], r.precision));
      widths[i] = std::max(widths[i], line.back().size());
    }
  }
  if (!table.title.empty()) out += table.title + "\n";
  out += fmt::format("{:<{}}", "", label_width);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += fmt::format("  {:>{}}", table.columns[i], widths[i]);
  out += "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += fmt::format("{:<{}}", table.rows[r].label, label_width);
    for (std::size_t i = 0; i < cells[r].size(); ++i) out += fmt::format("  {:>{}}", cells[r][i], widths[i]);
    out += "\n";
  }
  return out;
}

std::size_t HistogramGeometry::bin_of(double value) const {
  if (value <= min) return 0;
  // values on a bin edge (up to rounding) go to the upper bin
  const auto raw = std::floor((value - min) / bin_width + 1e-9);
  return std::min(static_cast<std::size_t>(raw), bins - 1);
}

HistogramGeometry histogram_geometry(const std::vector<std::pair<std::string, double>>& values,
                                     const std::map<std::string, Truth>& truth,
                                     std::optional<std::pair<double, double>> range, std::size_t bins) {
  if (values.empty()) throw InvalidArgument("histogram needs at least one value");
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  for (const auto& [area, v] : values)
    if (!std::isfinite(v)) throw InvalidArgument("histogram value for '" + area + "' is not finite");

  HistogramGeometry g;
  g.bins = bins;
  if (range) {
    if (!(range->first < range->second)) throw InvalidArgument("histogram range needs min < max");
    g.min = range->first;
    g.max = range->second;
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    if (!(lo->second < hi->second))
      throw InvalidArgument("automatic histogram range needs at least two distinct values");
    g.min = lo->second;
    g.max = hi->second;
  }
  g.bin_width = (g.max - g.min) / static_cast<double>(bins);
  for (const auto& [area, v] : values) {
    auto t = truth.find(area);
    g.entries.push_back({area, v, t == truth.end() ? Truth::other : t->second, g.bin_of(v)});
  }
  return g;
}

char truth_glyph(Truth t) {
  switch (t) {
    case Truth::window:
      return 'W';
    case Truth::shutter:
      return 'S';
    case Truth::other:
      return 'o';
  }
  return '?';
}

std::string render_histogram(const HistogramGeometry& g, const std::string& title) {
  // Column contents, bottom-up: windows first, then shutters, then others.
  std::vector<std::string> columns(g.bins);
  for (const auto t : {Truth::window, Truth::shutter, Truth::other})
    for (const auto& e : g.entries)
      if (e.truth == t) columns[e.bin] += truth_glyph(t);
  std::size_t height = 0;
  for (const auto& c : columns) height = std::max(height, c.size());

  std::string out = title + "\n";
  for (std::size_t level = height; level-- > 0;) {
    std::string line = "|";
    for (const auto& c : columns) line += level < c.size() ? c[level] : ' ';
    out += line + "|\n";
  }
  out += "+" + std::string(g.bins, '-') + "+\n";
  const auto lo = format_number(g.min, 3);
  const auto hi = format_number(g.max, 3);
  const std::size_t gap = g.bins + 2 > lo.size() + hi.size() ? g.bins + 2 - lo.size() - hi.size() : 1;
  out += lo + std::string(gap, ' ') + hi + "\n";
  out += fmt::format("bin width {}  (W window, S shutter, o other)\n", format_number(g.bin_width, 4));
  return out;
}

}  // namespace evr::harness
