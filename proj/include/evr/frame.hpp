#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evr {

inline constexpr std::size_t kMaxFrameCapacity = 64;

class Frame;

/// Subset of a frame's worlds, stored as a 64-bit mask keyed to world order.
///
/// A FocalSet does not carry its frame; operations that mix a set with a
/// frame check the width against the frame size.
class FocalSet {
 public:
  constexpr FocalSet() = default;
  constexpr explicit FocalSet(std::uint64_t bits) : bits_(bits) {}

  static FocalSet single(std::size_t world);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  bool contains(std::size_t world) const noexcept { return world < 64 && ((bits_ >> world) & 1U); }
  std::size_t count() const noexcept;

  constexpr bool is_subset_of(FocalSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  constexpr FocalSet operator&(FocalSet o) const noexcept { return FocalSet(bits_ & o.bits_); }
  constexpr FocalSet operator|(FocalSet o) const noexcept { return FocalSet(bits_ | o.bits_); }
  constexpr FocalSet minus(FocalSet o) const noexcept { return FocalSet(bits_ & ~o.bits_); }

  constexpr auto operator<=>(const FocalSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Frame of discernment: an immutable ordered list of mutually exclusive
/// worlds. Copies share the same underlying storage, so equality is cheap
/// for frames that came from the same construction.
class Frame {
 public:
  /// Throws InvalidArgument on empty, duplicate or too many labels.
  /// `capacity` must be in [1, 64].
  explicit Frame(std::vector<std::string> world_labels, std::size_t capacity = kMaxFrameCapacity);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::vector<std::string>& worlds() const noexcept { return *labels_; }
  const std::string& world(std::size_t i) const { return labels_->at(i); }

  /// Index of a world label; throws InvalidArgument when unknown.
  std::size_t index_of(std::string_view label) const;

  FocalSet theta() const noexcept;
  FocalSet complement(FocalSet s) const noexcept { return theta().minus(s); }
  bool admits(FocalSet s) const noexcept { return s.is_subset_of(theta()); }

  /// Set built from world labels.
  FocalSet subset(const std::vector<std::string>& labels) const;

  bool operator==(const Frame& other) const noexcept;

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

Frame make_frame(std::vector<std::string> world_labels, std::size_t capacity = kMaxFrameCapacity);

/// A discrete feature and its possible values. Boolean features use the
/// values {"yes", "no"}.
struct Feature {
  std::string name;
  std::vector<std::string> values;

  static Feature boolean(std::string name) { return {std::move(name), {"yes", "no"}}; }

  bool operator==(const Feature&) const = default;
};

/// Product frame over independent features. Each world is one joint
/// assignment; a single feature value becomes the cylinder set of all worlds
/// that agree on it.
class FeatureSpace {
 public:
  explicit FeatureSpace(std::vector<Feature> features, std::size_t capacity = kMaxFrameCapacity);

  const Frame& frame() const noexcept { return frame_; }
  const std::vector<Feature>& features() const noexcept { return features_; }

  /// Worlds where `feature` takes `value`. Throws InvalidArgument on unknown names.
  FocalSet cylinder(std::string_view feature, std::string_view value) const;

  /// Value index of `feature` in world `world`.
  std::size_t value_index(std::size_t world, std::size_t feature) const;

 private:
  std::vector<Feature> features_;
  std::vector<std::size_t> strides_;
  Frame frame_;
};

}  // namespace evr
