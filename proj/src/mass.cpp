#include "evr/mass.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evr/error.hpp"

namespace evr {

MassFunction::MassFunction(Frame frame, std::vector<FocalMass> entries) : frame_(std::move(frame)) {
  double total = 0.0;
  for (const auto& e : entries) {
    if (!std::isfinite(e.mass) || e.mass < 0.0)
      throw InvalidArgument("mass must be a finite non-negative number, got " + std::to_string(e.mass));
    if (!frame_.admits(e.set)) throw InvalidArgument("focal set lies outside the frame");
    if (e.set.empty() && e.mass > 0.0) throw InvalidArgument("the empty set cannot carry mass");
    total += e.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw InvalidArgument("masses sum to " + std::to_string(total) + ", expected 1");

  std::sort(entries.begin(), entries.end(), [](const FocalMass& a, const FocalMass& b) { return a.set < b.set; });
  for (const auto& e : entries) {
    if (e.mass == 0.0) continue;
    if (!focals_.empty() && focals_.back().set == e.set)
      focals_.back().mass += e.mass;
    else
      focals_.push_back(e);
  }
}

MassFunction MassFunction::vacuous(const Frame& frame) { return MassFunction(frame, {{frame.theta(), 1.0}}); }

double MassFunction::mass_of(FocalSet set) const noexcept {
  auto it = std::lower_bound(focals_.begin(), focals_.end(), set,
                             [](const FocalMass& f, FocalSet s) { return f.set < s; });
  return (it != focals_.end() && it->set == set) ? it->mass : 0.0;
}

bool MassFunction::is_vacuous() const noexcept {
  return focals_.size() == 1 && focals_.front().set == frame_.theta();
}

MassFunction simple_support(const Frame& frame, FocalSet focal, double support) {
  if (focal.empty()) throw InvalidArgument("simple support needs a non-empty focal set");
  if (!(support >= 0.0 && support <= 1.0))
    throw InvalidArgument("support must lie in [0, 1], got " + std::to_string(support));
  return MassFunction(frame, {{focal, support}, {frame.theta(), 1.0 - support}});
}

double belief(const MassFunction& m, FocalSet a) {
  if (!m.frame().admits(a)) throw FrameMismatch("proposition lies outside the mass function's frame");
  double bel = 0.0;
  for (const auto& f : m.focals())
    if (f.set.is_subset_of(a)) bel += f.mass;
  return std::min(bel, 1.0);
}

double plausibility(const MassFunction& m, FocalSet a) {
  if (!m.frame().admits(a)) throw FrameMismatch("proposition lies outside the mass function's frame");
  double pl = 0.0;
  for (const auto& f : m.focals())
    if (!(f.set & a).empty()) pl += f.mass;
  return std::min(pl, 1.0);
}

}  // namespace evr
