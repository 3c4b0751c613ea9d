#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "evr/frame.hpp"

namespace evr {

inline constexpr double kMassTolerance = 1e-9;

struct FocalMass {
  FocalSet set;
  double mass = 0.0;
};

/// Normalized basic probability assignment over a frame.
///
/// Focal elements are kept sorted by bit pattern and carry strictly positive
/// mass; the empty set never carries mass. Immutable after construction.
class MassFunction {
 public:
  /// Validates and normalizes `entries`: duplicate sets are merged, zero
  /// entries dropped. Throws InvalidArgument when a mass is negative, the
  /// empty set has positive mass, a set lies outside the frame, or the total
  /// differs from 1 by more than kMassTolerance.
  MassFunction(Frame frame, std::vector<FocalMass> entries);

  static MassFunction vacuous(const Frame& frame);

  const Frame& frame() const noexcept { return frame_; }
  const std::vector<FocalMass>& focals() const noexcept { return focals_; }

  /// Mass of exactly `set` (0 when it is not focal).
  double mass_of(FocalSet set) const noexcept;

  bool is_vacuous() const noexcept;

 private:
  Frame frame_;
  std::vector<FocalMass> focals_;
};

/// Mass `support` on `focal`, the rest on the whole frame.
MassFunction simple_support(const Frame& frame, FocalSet focal, double support);

/// Sum of masses of non-empty focal elements contained in `a`.
double belief(const MassFunction& m, FocalSet a);

/// 1 - Bel(complement of a).
double plausibility(const MassFunction& m, FocalSet a);

}  // namespace evr
