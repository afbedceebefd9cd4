#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdt/clustering.hpp"
#include "tdt/codec.hpp"
#include "tdt/container.hpp"
#include "tdt/features.hpp"
#include "tdt/profiles.hpp"
#include "tdt/typed.hpp"

namespace tdt {

enum class Mode { static_profile, dynamic };

const char* to_string(Mode m) noexcept;
Mode parse_mode(std::string_view name);

struct PipelineConfig {
  std::size_t block_size = 256 * 1024;  // bytes; multiple of the word width
  CodecId codec = codec_id::lz77;
  CodecParams params{};
  Mode mode = Mode::dynamic;
  Packing packing = Packing::same_byte;
  double sample_fraction = 0.30;  // dynamic mode, in (0, 1]
  int worker_count = 1;
  std::string category;  // static mode profile key
  /// Unset fields take the per-width defaults of default_clustering_config.
  std::optional<ScoreMetric> metric;
  std::optional<FeatureSet> feature_set;
  FeatureConfig feature_cfg{};
};

/// Throws InvalidArgument naming the first invalid field.
void validate(const PipelineConfig& cfg, FloatWidth width);

/// Metric and feature set actually used for `width` under `cfg`.
ClusteringConfig clustering_config(const PipelineConfig& cfg, FloatWidth width);

/// Word-aligned byte ranges whose features stand in for the whole dataset in
/// dynamic mode: evenly strided sampling units covering `fraction` of them.
std::vector<std::pair<std::size_t, std::size_t>> sample_ranges(const TypedView& v, std::size_t block_size,
                                                               double fraction);

/// Half precision always gets two singletons. Static mode looks the plan up in
/// `profiles`; dynamic mode clusters features of the strided sample.
ClusteringPlan plan_for(const TypedView& v, const PipelineConfig& cfg,
                        const ProfileRegistry& profiles = ProfileRegistry::builtin());

/// Dynamic-mode selection with the per-candidate scores.
Selection plan_details(const TypedView& v, const PipelineConfig& cfg);

/// Shrinks `block_size` (word-aligned, at least one word) until the dataset
/// splits into at least `worker_count` blocks.
std::size_t effective_block_size(std::size_t block_size, std::size_t dataset_size, int worker_count,
                                 FloatWidth width);

/// Contiguous block ranges [begin, end) handed to each worker.
std::vector<std::pair<std::uint32_t, std::uint32_t>> assign_blocks(std::uint32_t block_count, int worker_count);

/// Container bytes are identical for every worker_count. `tail` (fewer bytes
/// than one word) is carried through uncompressed.
Container compress_pipeline(const TypedView& v, const PipelineConfig& cfg, const ClusteringPlan& plan,
                            ByteSpan tail = {});

/// Decoded words followed by the tail.
Bytes decompress_pipeline(const Container& c, int worker_count = 1);
Bytes decompress_pipeline(ByteSpan container_bytes, int worker_count = 1);

/// Decode a single (block, cluster) stream using only the header and that stream.
Bytes decode_stream(const Container& c, std::uint32_t block, int cluster);

}  // namespace tdt
