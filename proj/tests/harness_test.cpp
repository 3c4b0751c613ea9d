#include <algorithm>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include <json.hpp>

#include "evr/error.hpp"
#include "evr/harness/fixture.hpp"
#include "evr/harness/render.hpp"
#include "evr/harness/report.hpp"
#include "evr/harness/runners.hpp"

namespace evr::harness {
namespace {

using ::testing::HasSubstr;

std::size_t index_of(const Fixture& f, const std::string& area) {
  for (std::size_t i = 0; i < f.areas.size(); ++i)
    if (f.areas[i].name == area) return i;
  throw std::out_of_range(area);
}

std::string validation_message(const std::string& text) {
  try {
    parse_fixture(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

nlohmann::json house_json() { return nlohmann::json::parse(house_fixture_json()); }

TEST(FixtureTest, LoadsHouse) {
  const auto f = load_fixture("builtin:house");
  EXPECT_EQ(f.areas.size(), 14u);
  EXPECT_EQ(f.features.size(), 6u);
  EXPECT_EQ(f.area("LLW").truth, Truth::window);
  EXPECT_EQ(f.label_for(Truth::shutter), "sht");
  EXPECT_EQ(f, house_fixture());
}

TEST(FixtureTest, ScoreOutOfRangeNamesAreaAndFeature) {
  auto j = house_json();
  j["areas"][0]["scores"]["text"] = 1.2;
  const auto msg = validation_message(j.dump());
  EXPECT_THAT(msg, HasSubstr("ULS"));
  EXPECT_THAT(msg, HasSubstr("text"));
}

TEST(FixtureTest, DuplicateAreaRejected) {
  auto j = house_json();
  j["areas"][1]["name"] = "ULS";
  EXPECT_THAT(validation_message(j.dump()), HasSubstr("duplicate area name"));
}

TEST(FixtureTest, MalformedInputRejected) {
  EXPECT_THROW(parse_fixture("{not json"), ValidationError);
  EXPECT_THROW(parse_fixture("[]"), ValidationError);
  auto j = house_json();
  j["areas"][2]["scores"].erase("top_bound");
  EXPECT_THAT(validation_message(j.dump()), HasSubstr("LLS"));
  j = house_json();
  j["schema_version"] = 99;
  EXPECT_THAT(validation_message(j.dump()), HasSubstr("schema_version"));
  EXPECT_THROW(load_fixture("/nonexistent/fixture.json"), Error);
}

TEST(FixtureTest, SerializeRoundTrip) {
  const auto f = house_fixture();
  EXPECT_EQ(parse_fixture(serialize_fixture(f)), f);
  const auto s = make_synthetic_fixture(3, 4, 2, 6);
  EXPECT_EQ(parse_fixture(serialize_fixture(s)), s);
}

TEST(FixtureTest, SubsetKeepsReferenceAligned) {
  const auto f = house_fixture();
  const auto sub = f.subset({"LLW", "3"});
  ASSERT_EQ(sub.areas.size(), 2u);
  EXPECT_EQ(sub.reference.at(Mechanism::weights).at("WT'(wnd)"), (std::vector<double>{2.4, 0.0}));
  EXPECT_THROW(f.subset({"nope"}), Error);
}

TEST(RunnerTest, DsHouseValues) {
  const auto f = house_fixture();
  const auto r = run_ds(f);
  const auto& urs = r[index_of(f, "URS")];
  EXPECT_NEAR(urs.belief.at("sht"), 0.470, 0.002);
  EXPECT_NEAR(urs.belief_prime.at("sht"), 0.509, 0.002);
  EXPECT_NEAR(r[index_of(f, "5")].belief_prime.at("sht"), 0.042, 0.002);
}

TEST(RunnerTest, DsAllZeroAreaHasNoSupport) {
  auto f = house_fixture().subset({"3"});
  for (auto& [k, v] : f.areas[0].scores) v = 0.0;
  const auto r = run_ds(f);
  EXPECT_DOUBLE_EQ(r[0].belief.at("sht"), 0.0);
  EXPECT_DOUBLE_EQ(r[0].belief_prime.at("wnd"), 0.0);
}

TEST(RunnerTest, BayesTextureOnly) {
  auto f = house_fixture().subset({"ULS"});
  f.bayes.config.likelihoods["wnd"] = {{"text", {2.0, 0.8}}};
  f.bayes.config.hypotheses = {{"wnd", 0.167}, {"sht", 0.333}, {"others", 0.5}};
  EXPECT_NEAR(run_bayes(f)[0].posterior.at("wnd"), 0.197, 0.001);
  f.bayes.config.likelihoods["wnd"].clear();
  EXPECT_DOUBLE_EQ(run_bayes(f)[0].posterior.at("wnd"), 0.167);
}

TEST(RunnerTest, BayesHouseNearReference) {
  const auto f = house_fixture();
  const auto r = run_bayes(f);
  const auto& ref = f.reference.at(Mechanism::bayes);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(r[i].posterior.at("sht"), ref.at("P'(sht)")[i], 0.003) << f.areas[i].name;
    EXPECT_NEAR(r[i].posterior.at("wnd"), ref.at("P'(wnd)")[i], 0.003) << f.areas[i].name;
  }
}

TEST(RunnerTest, WeightsHouseValues) {
  const auto f = house_fixture();
  const auto r = run_weights(f);
  EXPECT_NEAR(r[index_of(f, "URS")].weight_prime.at("sht"), 2.7, 1e-9);
  EXPECT_NEAR(r[index_of(f, "1")].weight.at("sht"), -0.3, 1e-9);
}

TEST(RunnerTest, ParallelMatchesSerial) {
  const auto f = make_synthetic_fixture(42, 30, 20, 150);
  for (auto m : kAllMechanisms) {
    const auto a = final_scores(f, m, Execution::serial);
    const auto b = final_scores(f, m, Execution::parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].area, b[i].area);
      EXPECT_EQ(a[i].scores, b[i].scores);
    }
  }
}

TEST(RunnerTest, SubsetMatchesFullRun) {
  const auto f = house_fixture();
  const auto full = final_scores(f, Mechanism::ds);
  const auto part = final_scores(f.subset({"LMS", "6"}), Mechanism::ds);
  EXPECT_EQ(part[0].scores, full[index_of(f, "LMS")].scores);
  EXPECT_EQ(part[1].scores, full[index_of(f, "6")].scores);
}

TEST(SyntheticTest, DeterministicForSeed) {
  EXPECT_EQ(make_synthetic_fixture(7, 12, 0, 34), make_synthetic_fixture(7, 12, 0, 34));
  EXPECT_NE(make_synthetic_fixture(7, 12, 0, 34), make_synthetic_fixture(8, 12, 0, 34));
  const auto f = make_synthetic_fixture(7, 12, 0, 34);
  EXPECT_EQ(f.areas.size(), 46u);
  EXPECT_EQ(std::count_if(f.areas.begin(), f.areas.end(), [](const auto& a) { return a.truth == Truth::window; }), 12);
}

TEST(RenderTest, DeterministicText) {
  const auto f = house_fixture();
  const auto a = render_table(mechanism_table(f, Mechanism::ds), TableFormat::text);
  const auto b = render_table(mechanism_table(f, Mechanism::ds, Execution::serial), TableFormat::text);
  EXPECT_EQ(a, b);
  EXPECT_THAT(a, HasSubstr("Bel'(wnd)"));
}

TEST(RenderTest, Csv) {
  const ResultTable t{"t", {"A", "B"}, {{"x", {1.0, -0.0}, 2}, {"y", {0.1234, 2.5}, 3}}};
  EXPECT_EQ(render_table(t, TableFormat::csv), "metric,A,B\nx,1.00,0.00\ny,0.123,2.500\n");
}

TEST(RenderTest, EmptyTableThrows) {
  EXPECT_THROW(render_table({"t", {}, {}}, TableFormat::text), InvalidArgument);
  EXPECT_THROW(table_format_from_string("xml"), InvalidArgument);
}

TEST(RenderTest, ReferenceTable) {
  const auto f = house_fixture();
  ASSERT_TRUE(reference_table(f, Mechanism::weights).has_value());
  EXPECT_FALSE(reference_table(make_synthetic_fixture(1, 1, 1, 1), Mechanism::ds).has_value());
}

class HistogramTest : public ::testing::Test {
 protected:
  Fixture f = house_fixture();

  std::map<std::string, Truth> truth() const {
    std::map<std::string, Truth> t;
    for (const auto& a : f.areas) t[a.name] = a.truth;
    return t;
  }

  std::vector<std::pair<std::string, double>> series(Mechanism m, const std::string& row) const {
    std::vector<std::pair<std::string, double>> v;
    const auto& values = f.reference.at(m).at(row);
    for (std::size_t i = 0; i < f.areas.size(); ++i) v.emplace_back(f.areas[i].name, values[i]);
    return v;
  }
};

TEST_F(HistogramTest, BeliefWindowsRightOfEverythingElse) {
  const auto g = histogram_geometry(series(Mechanism::ds, "Bel'(wnd)"), truth(), std::pair{0.034, 0.509}, 40);
  std::size_t min_window = g.bins, max_rest = 0;
  for (const auto& e : g.entries) {
    if (e.truth == Truth::window) min_window = std::min(min_window, e.bin);
    else max_rest = std::max(max_rest, e.bin);
  }
  EXPECT_GT(min_window, max_rest);
  EXPECT_NEAR(g.bin_width, 0.475 / 40, 1e-12);
  const auto text = render_histogram(g, "Bel'(wnd)");
  EXPECT_THAT(text, HasSubstr("W"));
  EXPECT_EQ(text, render_histogram(g, "Bel'(wnd)"));
}

TEST_F(HistogramTest, WeightsShutterSitsInWindowRegion) {
  const auto g = histogram_geometry(series(Mechanism::weights, "WT'(wnd)"), truth(), std::pair{-0.3, 2.7}, 40);
  std::size_t lms = 0, lrw = 0;
  for (const auto& e : g.entries) {
    if (e.area == "LMS") lms = e.bin;
    if (e.area == "LRW") lrw = e.bin;
  }
  EXPECT_EQ(lms, lrw);
}

TEST_F(HistogramTest, SingleAreaExplicitRange) {
  const auto g = histogram_geometry({{"ULS", 0.3}}, truth(), std::pair{0.0, 1.0}, 10);
  ASSERT_EQ(g.entries.size(), 1u);
  EXPECT_EQ(g.entries[0].bin, 3u);
  EXPECT_EQ(g.bin_of(1.0), 9u);
  EXPECT_EQ(g.bin_of(-5.0), 0u);
}

TEST_F(HistogramTest, DegenerateRangesThrow) {
  EXPECT_THROW(histogram_geometry({{"a", 0.2}, {"b", 0.2}}, truth()), InvalidArgument);
  EXPECT_THROW(histogram_geometry({{"a", 0.2}}, truth(), std::pair{1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(histogram_geometry({}, truth(), std::pair{0.0, 1.0}), InvalidArgument);
}

TEST(CompareTest, EmptyMechanismListThrows) {
  EXPECT_THROW(compare(house_fixture(), {}), InvalidArgument);
}

TEST(CompareTest, HouseDs) {
  const auto report = compare(house_fixture(), {Mechanism::ds});
  const auto& ds = report.of(Mechanism::ds);
  EXPECT_EQ(ds.argmax_correct, 13u);
  const auto lms = std::find_if(ds.argmax.begin(), ds.argmax.end(), [](const auto& d) { return d.area == "LMS"; });
  ASSERT_NE(lms, ds.argmax.end());
  EXPECT_TRUE(lms->draw);
  EXPECT_GT(ds.margins.at("wnd"), 0.0);
  EXPECT_THROW(report.of(Mechanism::bayes), InvalidArgument);
}

TEST(CompareTest, RenderedReportsAreDeterministic) {
  const auto f = house_fixture();
  const std::vector<Mechanism> all(std::begin(kAllMechanisms), std::end(kAllMechanisms));
  const auto a = compare(f, all, Execution::serial);
  const auto b = compare(f, all, Execution::parallel);
  EXPECT_EQ(render_report_text(a), render_report_text(b));
  EXPECT_EQ(render_report_json(a), render_report_json(b));
  const auto j = nlohmann::json::parse(render_report_json(a));
  EXPECT_EQ(j["mechanisms"].size(), 3u);
}

}  // namespace
}  // namespace evr::harness
