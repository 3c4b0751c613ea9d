#include "evr/frame.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "evr/error.hpp"

namespace evr {

FocalSet FocalSet::single(std::size_t world) {
  if (world >= kMaxFrameCapacity) throw InvalidArgument("world index out of range: " + std::to_string(world));
  return FocalSet(std::uint64_t{1} << world);
}

std::size_t FocalSet::count() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

Frame::Frame(std::vector<std::string> world_labels, std::size_t capacity) {
  if (capacity == 0 || capacity > kMaxFrameCapacity)
    throw InvalidArgument("frame capacity must be in [1, 64], got " + std::to_string(capacity));
  if (world_labels.empty()) throw InvalidArgument("frame needs at least one world");
  if (world_labels.size() > capacity)
    throw InvalidArgument("frame has " + std::to_string(world_labels.size()) + " worlds, capacity is " +
                          std::to_string(capacity));
  std::unordered_set<std::string> seen;
  for (const auto& label : world_labels) {
    if (label.empty()) throw InvalidArgument("world labels must be non-empty");
    if (!seen.insert(label).second) throw InvalidArgument("duplicate world label: " + label);
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(world_labels));
}

Frame make_frame(std::vector<std::string> world_labels, std::size_t capacity) {
  return Frame(std::move(world_labels), capacity);
}

std::size_t Frame::index_of(std::string_view label) const {
  const auto& w = *labels_;
  auto it = std::find(w.begin(), w.end(), label);
  if (it == w.end()) throw InvalidArgument("unknown world: " + std::string(label));
  return static_cast<std::size_t>(it - w.begin());
}

FocalSet Frame::theta() const noexcept {
  const auto n = size();
  return FocalSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

FocalSet Frame::subset(const std::vector<std::string>& labels) const {
  FocalSet s;
  for (const auto& l : labels) s = s | FocalSet::single(index_of(l));
  return s;
}

bool Frame::operator==(const Frame& other) const noexcept {
  return labels_ == other.labels_ || *labels_ == *other.labels_;
}

namespace {

std::vector<std::string> product_labels(const std::vector<Feature>& features) {
  if (features.empty()) throw InvalidArgument("feature space needs at least one feature");
  std::size_t total = 1;
  for (const auto& f : features) {
    if (f.values.empty()) throw InvalidArgument("feature '" + f.name + "' has no values");
    total *= f.values.size();
    if (total > kMaxFrameCapacity)
      throw InvalidArgument("feature product exceeds " + std::to_string(kMaxFrameCapacity) + " worlds");
  }
  std::vector<std::string> labels;
  labels.reserve(total);
  for (std::size_t w = 0; w < total; ++w) {
    std::string label;
    std::size_t rest = w;
    for (const auto& f : features) {
      if (!label.empty()) label += ',';
      label += f.name + '=' + f.values[rest % f.values.size()];
      rest /= f.values.size();
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace

FeatureSpace::FeatureSpace(std::vector<Feature> features, std::size_t capacity)
    : features_(std::move(features)), frame_(product_labels(features_), capacity) {
  std::unordered_set<std::string> names;
  std::size_t stride = 1;
  for (const auto& f : features_) {
    if (!names.insert(f.name).second) throw InvalidArgument("duplicate feature: " + f.name);
    std::unordered_set<std::string> vals(f.values.begin(), f.values.end());
    if (vals.size() != f.values.size()) throw InvalidArgument("duplicate value in feature: " + f.name);
    strides_.push_back(stride);
    stride *= f.values.size();
  }
}

std::size_t FeatureSpace::value_index(std::size_t world, std::size_t feature) const {
  return (world / strides_.at(feature)) % features_.at(feature).values.size();
}

FocalSet FeatureSpace::cylinder(std::string_view feature, std::string_view value) const {
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (features_[f].name != feature) continue;
    const auto& vals = features_[f].values;
    auto it = std::find(vals.begin(), vals.end(), value);
    if (it == vals.end())
      throw InvalidArgument("feature '" + std::string(feature) + "' has no value '" + std::string(value) + "'");
    const auto v = static_cast<std::size_t>(it - vals.begin());
    FocalSet s;
    for (std::size_t w = 0; w < frame_.size(); ++w)
      if (value_index(w, f) == v) s = s | FocalSet::single(w);
    return s;
  }
  throw InvalidArgument("unknown feature: " + std::string(feature));
}

}  // namespace evr
