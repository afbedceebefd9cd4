#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tdt/typed.hpp"

namespace tdt {

enum class FeatureSet { entropy_only, frequency_only, combined };

const char* to_string(FeatureSet s) noexcept;
FeatureSet parse_feature_set(std::string_view name);

struct FeatureConfig {
  /// Window, in bytes of the byte group, over which each block entropy is taken.
  std::size_t entropy_block_size = 65536;
  FeatureSet feature_set = FeatureSet::combined;
};

/// Statistical signature of one byte group: four block-entropy statistics
/// followed by the 256-bin normalized byte histogram of the whole group.
struct FeatureVector {
  static constexpr std::size_t kEntropyDims = 4;
  static constexpr std::size_t kFrequencyDims = 256;
  static constexpr std::size_t kDims = kEntropyDims + kFrequencyDims;

  double avg_entropy = 0.0;
  double std_entropy = 0.0;
  double max_entropy = 0.0;
  double min_entropy = 0.0;
  std::array<double, 256> byte_freq{};

  /// Coordinates selected by `set`, in the order
  /// [avg, std, max, min, f(0) .. f(255)].
  std::vector<double> coordinates(FeatureSet set) const;
};

/// Shannon entropy of the byte histogram, in bits per byte.
double block_entropy(ByteSpan bytes);

std::array<std::uint64_t, 256> byte_histogram(ByteSpan bytes);
double histogram_entropy(const std::array<std::uint64_t, 256>& counts, std::uint64_t total);

FeatureVector feature_extraction(ByteSpan group, const FeatureConfig& cfg);
inline FeatureVector feature_extraction(const ByteGroup& g, const FeatureConfig& cfg) {
  return feature_extraction(ByteSpan(g.bytes), cfg);
}

/// Feature vector of every byte position of `v`, position order.
std::vector<FeatureVector> extract_features(const TypedView& v, const FeatureConfig& cfg);

/// Euclidean distance over the coordinates selected by `set`.
double feature_distance(const FeatureVector& a, const FeatureVector& b, FeatureSet set);

}  // namespace tdt
