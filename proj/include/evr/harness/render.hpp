#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evr/harness/fixture.hpp"
#include "evr/harness/runners.hpp"

namespace evr::harness {

enum class TableFormat { text, csv };

TableFormat table_format_from_string(std::string_view s);

struct TableRow {
  std::string label;
  std::vector<double> values;
  int precision = 3;
};

/// Metric rows over area columns, laid out like the published tables.
struct ResultTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

ResultTable ds_table(const Fixture& fixture, const std::vector<DsAreaResult>& results);
ResultTable bayes_table(const Fixture& fixture, const std::vector<BayesAreaResult>& results);
ResultTable weights_table(const Fixture& fixture, const std::vector<WeightAreaResult>& results);

/// Runs one mechanism and builds its table.
ResultTable mechanism_table(const Fixture& fixture, Mechanism m, Execution exec = Execution::parallel);

/// Published reference rows of a mechanism, if the fixture carries any.
std::optional<ResultTable> reference_table(const Fixture& fixture, Mechanism m);

/// Fixed-precision rendering; identical input gives identical bytes. Throws
/// InvalidArgument for a table without columns or rows.
std::string render_table(const ResultTable& table, TableFormat format);

/// Fixed-precision number with negative zero folded to zero.
std::string format_number(double v, int precision);

struct HistogramEntry {
  std::string area;
  double value = 0.0;
  Truth truth = Truth::other;
  std::size_t bin = 0;
};

/// Equal-width bins over [min, max]; values outside clamp to the edge bins.
struct HistogramGeometry {
  double min = 0.0;
  double max = 0.0;
  std::size_t bins = 40;
  double bin_width = 0.0;
  std::vector<HistogramEntry> entries;

  std::size_t bin_of(double value) const;
};

/// Auto range (no `range`) needs two distinct values; an explicit range
/// needs min < max.
HistogramGeometry histogram_geometry(const std::vector<std::pair<std::string, double>>& values,
                                     const std::map<std::string, Truth>& truth,
                                     std::optional<std::pair<double, double>> range = std::nullopt,
                                     std::size_t bins = 40);

char truth_glyph(Truth t);

/// Stacked text histogram: 'W' windows, 'S' shutters, 'o' others.
std::string render_histogram(const HistogramGeometry& geometry, const std::string& title);

}  // namespace evr::harness
