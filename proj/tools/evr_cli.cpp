// evr: run and compare the evidential, Bayesian and weight-sum mechanisms
// over a fixture of candidate areas.
//
// Exit codes: 0 success, 1 validation error, 2 computation error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evr/error.hpp"
#include "evr/harness/fixture.hpp"
#include "evr/harness/render.hpp"
#include "evr/harness/report.hpp"

namespace {

using namespace evr;
using namespace evr::harness;

constexpr int kExitValidation = 1;
constexpr int kExitComputation = 2;

std::vector<Mechanism> parse_methods(const std::vector<std::string>& names) {
  std::vector<Mechanism> out;
  for (const auto& n : names) {
    // accept "ds,bayes" as well as separate arguments
    std::stringstream ss(n);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(mechanism_from_string(part));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare uncertain-evidence reasoning mechanisms on candidate-area fixtures"};
  app.require_subcommand(1);

  std::string fixture_path = "builtin:house";
  auto add_fixture = [&](CLI::App* cmd) {
    cmd->add_option("--fixture", fixture_path, "Fixture JSON path, or builtin:house")->capture_default_str();
  };

  std::string method = "ds";
  std::string format = "text";
  bool serial = false;

  auto* run = app.add_subcommand("run", "Run one mechanism and print its table");
  run->add_option("--method", method, "ds | bayes | weights")->required();
  add_fixture(run);
  run->add_option("--format", format, "text | csv")->capture_default_str();
  bool with_reference = false;
  run->add_flag("--reference", with_reference, "Also print the fixture's published reference rows");
  run->add_flag("--serial", serial, "Evaluate areas on one thread");

  std::vector<std::string> methods{"ds", "bayes", "weights"};
  auto* cmp = app.add_subcommand("compare", "Run mechanisms, decisions and separation analysis");
  add_fixture(cmp);
  cmp->add_option("--methods", methods, "Methods to compare")->capture_default_str();
  cmp->add_option("--format", format, "text | json")->capture_default_str();
  cmp->add_flag("--serial", serial, "Evaluate areas on one thread");

  std::string cls = "wnd";
  std::optional<double> hist_min, hist_max;
  std::optional<std::size_t> bins;
  auto* hist = app.add_subcommand("histogram", "Histogram of a mechanism's final score for one class");
  hist->add_option("--method", method, "ds | bayes | weights")->required();
  hist->add_option("--class", cls, "Hypothesis label, e.g. wnd or sht")->capture_default_str();
  add_fixture(hist);
  hist->add_option("--min", hist_min, "Explicit range minimum");
  hist->add_option("--max", hist_max, "Explicit range maximum");
  hist->add_option("--bins", bins, "Number of bins (default from fixture)");

  auto* val = app.add_subcommand("validate", "Validate a fixture");
  add_fixture(val);

  auto* exp = app.add_subcommand("export", "Print a fixture in canonical JSON form");
  add_fixture(exp);

  std::uint64_t seed = 1;
  std::size_t n_windows = 12, n_shutters = 0, n_others = 34;
  auto* synth = app.add_subcommand("synth", "Print a generated fixture");
  synth->add_option("--seed", seed)->capture_default_str();
  synth->add_option("--windows", n_windows)->capture_default_str();
  synth->add_option("--shutters", n_shutters)->capture_default_str();
  synth->add_option("--others", n_others)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  Fixture fixture;
  try {
    if (synth->parsed()) {
      std::cout << serialize_fixture(make_synthetic_fixture(seed, n_windows, n_shutters, n_others));
      return 0;
    }
    fixture = load_fixture(fixture_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const auto exec = serial ? Execution::serial : Execution::parallel;
  try {
    if (val->parsed()) {
      std::cout << "ok: " << fixture.name << " (" << fixture.areas.size() << " areas)\n";
    } else if (exp->parsed()) {
      std::cout << serialize_fixture(fixture);
    } else if (run->parsed()) {
      const auto m = mechanism_from_string(method);
      const auto fmt = table_format_from_string(format);
      std::cout << render_table(mechanism_table(fixture, m, exec), fmt);
      if (with_reference)
        if (auto ref = reference_table(fixture, m)) std::cout << "\n" << render_table(*ref, fmt);
    } else if (cmp->parsed()) {
      if (format != "text" && format != "json") throw InvalidArgument("unknown format '" + format + "'");
      const auto report = compare(fixture, parse_methods(methods), exec);
      std::cout << (format == "json" ? render_report_json(report) : render_report_text(report));
    } else if (hist->parsed()) {
      const auto m = mechanism_from_string(method);
      if (hist_min.has_value() != hist_max.has_value())
        throw InvalidArgument("--min and --max must be given together");
      std::optional<std::pair<double, double>> range;
      if (hist_min) range = std::pair{*hist_min, *hist_max};
      std::vector<std::pair<std::string, double>> series;
      std::map<std::string, Truth> truth;
      for (const auto& s : final_scores(fixture, m, exec)) {
        auto it = s.scores.find(cls);
        if (it == s.scores.end()) throw InvalidArgument("unknown class '" + cls + "'");
        series.emplace_back(s.area, it->second);
        truth[s.area] = fixture.area(s.area).truth;
      }
      const auto g = histogram_geometry(series, truth, range, bins.value_or(fixture.histogram_bins));
      std::cout << render_histogram(g, final_score_name(m) + "(" + cls + ") " + fixture.name);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return 0;
}
