#include <random>

#include <gtest/gtest.h>

#include "evr/error.hpp"
#include "evr/weightsum.hpp"

namespace evr::weights {
namespace {

PolaritySpec house_polarity() {
  PolaritySpec spec;
  spec.hypotheses["sht"] = {{"elong_sht", "text", "top_bound", "btm_bound"}, {"elong_wnd"}};
  spec.hypotheses["wnd"] = {{"elong_wnd", "text", "top_bound", "btm_bound"}, {"elong_sht"}};
  return spec;
}

FeatureScores scores(double es, double ew, double text, double top, double btm) {
  return {{"elong_sht", es}, {"elong_wnd", ew}, {"text", text}, {"top_bound", top}, {"btm_bound", btm}};
}

TEST(WeightSumTest, UpperLeftShutter) {
  const auto uls = scores(0.5, 0.0, 0.4, 0.3, 0.3);
  EXPECT_NEAR(weight_score(uls, house_polarity(), "sht").value, 1.5, 1e-12);
  EXPECT_NEAR(weight_score(uls, house_polarity(), "wnd").value, 0.5, 1e-12);
}

TEST(WeightSumTest, AllZero) {
  EXPECT_DOUBLE_EQ(weight_score(scores(0, 0, 0, 0, 0), house_polarity(), "sht").value, 0.0);
}

TEST(WeightSumTest, NegativeWeightsAreKept) {
  // area 1 of the house scene
  EXPECT_NEAR(weight_score(scores(0, 0.5, 0, 0.1, 0.1), house_polarity(), "sht").value, -0.3, 1e-12);
}

TEST(WeightSumTest, WithSibling) {
  EXPECT_NEAR(with_sibling({"sht", 1.5}, 0.6).value, 2.1, 1e-12);
  EXPECT_DOUBLE_EQ(with_sibling({"sht", 0.8}, 0.0).value, 0.8);
  const auto lms = scores(0.3, 0.3, 0.4, 0.6, 0.6);
  for (const auto* h : {"sht", "wnd"})
    EXPECT_NEAR(with_sibling(weight_score(lms, house_polarity(), h), 0.6).value, 2.2, 1e-12);
}

TEST(WeightSumTest, Errors) {
  auto partial = scores(0.5, 0.0, 0.4, 0.3, 0.3);
  partial.erase("text");
  EXPECT_THROW(weight_score(partial, house_polarity(), "sht"), InvalidArgument);
  EXPECT_THROW(weight_score(scores(0, 0, 0, 0, 0), house_polarity(), "door"), InvalidArgument);
  PolaritySpec bad;
  bad.hypotheses["x"] = {{"a"}, {"a"}};
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(WeightSumProperty, LinearAndSymmetric) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto spec = house_polarity();
  for (int i = 0; i < 1000; ++i) {
    const auto s = scores(u(rng), u(rng), u(rng), u(rng), u(rng));
    const double a = 3.0 * u(rng);
    FeatureScores scaled;
    for (const auto& [k, v] : s) scaled[k] = a * v;
    EXPECT_NEAR(weight_score(scaled, spec, "sht").value, a * weight_score(s, spec, "sht").value, 1e-12);

    auto sym = s;
    sym["elong_wnd"] = sym["elong_sht"];
    EXPECT_NEAR(weight_score(sym, spec, "sht").value, weight_score(sym, spec, "wnd").value, 1e-12);
  }
}

}  // namespace
}  // namespace evr::weights
