#pragma once

#include <span>
#include <string>
#include <vector>

#include "evr/mass.hpp"

namespace evr {

/// Dempster's rule: intersect focal pairs, drop the conflict K on empty
/// intersections and renormalize by 1/(1-K).
///
/// Throws FrameMismatch for different frames and TotalConflict when K = 1.
MassFunction combine(const MassFunction& m1, const MassFunction& m2);

/// Left fold of `combine` over a non-empty list.
MassFunction combine_all(std::span<const MassFunction> ms);

/// Conflict mass K between two mass functions.
double conflict(const MassFunction& m1, const MassFunction& m2);

/// A named expected-feature proposition of a knowledge source.
struct KnowledgeTerm {
  std::string proposition;
  FocalSet set;
  double mass = 0.0;
};

/// A hypothesis model: masses over the features expected for it, with the
/// uncommitted remainder on the whole frame. Larger mass marks a key feature.
class KnowledgeSource {
 public:
  /// Throws InvalidArgument when there is no non-frame term, a term set is
  /// empty, a term covers the whole frame, or the term masses exceed 1.
  KnowledgeSource(std::string hypothesis, Frame frame, std::vector<KnowledgeTerm> terms);

  const std::string& hypothesis() const noexcept { return hypothesis_; }
  const Frame& frame() const noexcept { return masses_.frame(); }
  const std::vector<KnowledgeTerm>& terms() const noexcept { return terms_; }
  const MassFunction& masses() const noexcept { return masses_; }
  double theta_mass() const noexcept { return masses_.mass_of(masses_.frame().theta()); }

 private:
  std::string hypothesis_;
  std::vector<KnowledgeTerm> terms_;
  MassFunction masses_;
};

/// Outcome of checking accumulated evidence against a knowledge source.
struct VerificationResult {
  std::string hypothesis;
  double support = 0.0;  ///< m(o)

  /// Simple support function on the proposition "o holds" over the two-world
  /// frame {o, not-o}, with 1 - support left uncommitted.
  MassFunction as_simple_support() const;
};

/// Hypothesis verification: support = sum over non-frame terms B of the
/// source of m_s(B) * Bel_e(B). Bel_e(B) collects every evidence focal
/// A contained in B, so this is the set-inclusion sum of m_e(A) m_s(B).
/// The source's own mass on the frame does not count as support.
VerificationResult verify(const MassFunction& evidence, const KnowledgeSource& source);

/// One piece of second-level evidence: belief in a proposition that sits
/// beside the lower-level hypothesis (e.g. a horizontal-sibling relation).
struct SecondLevelEvidence {
  std::string proposition;
  double belief = 0.0;
};

/// Second-level knowledge source: mass on the lower-level verification and on
/// each extra proposition. Masses are non-negative and sum to at most 1.
struct SecondLevelSource {
  std::string hypothesis;
  double lower_weight = 1.0;
  std::vector<std::pair<std::string, double>> evidence_weights;

  void validate() const;

  bool operator==(const SecondLevelSource&) const = default;
};

/// Runs verification one level up. A boolean frame is built over the lower
/// hypothesis and the extra propositions, each input becomes a simple support
/// function, they are combined, and the result is verified against `source`.
///
/// Every proposition of `source` must have a matching evidence entry.
VerificationResult hierarchical_verify(const VerificationResult& lower, std::span<const SecondLevelEvidence> extra,
                                       const SecondLevelSource& source);

}  // namespace evr
