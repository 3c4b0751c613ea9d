#include <cmath>
#include <random>

#include "evr/error.hpp"
#include "evr/harness/fixture.hpp"

namespace evr::harness {

namespace {

struct Range {
  double lo, hi;
};

// Per-class score ranges: elong_sht, elong_wnd, text, top_bound, btm_bound, h_sibl.
constexpr Range kWindow[] = {{0.0, 0.1}, {0.3, 0.6}, {0.2, 0.5}, {0.3, 0.7}, {0.0, 0.6}, {0.3, 0.7}};
constexpr Range kShutter[] = {{0.3, 0.6}, {0.0, 0.3}, {0.2, 0.5}, {0.2, 0.7}, {0.0, 0.7}, {0.3, 0.7}};
constexpr Range kOther[] = {{0.0, 0.4}, {0.0, 0.6}, {0.0, 0.4}, {0.0, 0.4}, {0.0, 0.4}, {0.0, 0.6}};
constexpr const char* kFeatures[] = {"elong_sht", "elong_wnd", "text", "top_bound", "btm_bound", "h_sibl"};

}  // namespace

Fixture make_synthetic_fixture(std::uint64_t seed, std::size_t windows, std::size_t shutters, std::size_t others) {
  if (windows + shutters + others == 0) throw InvalidArgument("synthetic fixture needs at least one area");
  Fixture f = house_fixture();
  f.name = "synthetic";
  f.description = "Generated areas: " + std::to_string(windows) + " windows, " + std::to_string(shutters) +
                  " shutters, " + std::to_string(others) + " others (seed " + std::to_string(seed) + ")";
  f.areas.clear();
  f.reference.clear();

  // mt19937_64 output is fully specified, so the unit mapping below is portable.
  std::mt19937_64 rng(seed);
  auto draw = [&](Range r) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::round((r.lo + u * (r.hi - r.lo)) * 10.0) / 10.0;
  };
  auto add = [&](const char* prefix, std::size_t count, const Range* ranges, Truth truth) {
    for (std::size_t i = 0; i < count; ++i) {
      AreaFeatureRecord rec{std::string(prefix) + std::to_string(i + 1), {}, truth};
      for (std::size_t k = 0; k < std::size(kFeatures); ++k) rec.scores[kFeatures[k]] = draw(ranges[k]);
      f.areas.push_back(std::move(rec));
    }
  };
  add("W", windows, kWindow, Truth::window);
  add("S", shutters, kShutter, Truth::shutter);
  add("N", others, kOther, Truth::other);
  return f;
}

}  // namespace evr::harness
