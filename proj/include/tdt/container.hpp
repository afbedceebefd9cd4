#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdt/codec.hpp"
#include "tdt/typed.hpp"

namespace tdt {

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::uint32_t kMaxBlockSize = std::uint32_t{1} << 30;

/// Offset-table entry for one (block, cluster) stream.
struct StreamEntry {
  std::uint32_t length = 0;  // bytes in the payload
  bool stored = false;       // raw bytes; the codec was not applied
  std::uint32_t crc = 0;     // CRC-32 of the payload bytes
};

/// In-memory form of the on-disk artifact. Streams are laid out block-major:
/// entry (b, c) is `entries[b * cluster_count + c]`.
struct Container {
  CodecId codec = codec_id::store;
  ClusteringPlan plan;
  std::uint32_t block_size = 0;
  std::uint64_t value_count = 0;
  std::vector<StreamEntry> entries;
  Bytes tail;
  Bytes payload;

  explicit Container(ClusteringPlan p) : plan(std::move(p)) {}

  FloatWidth width() const noexcept { return plan.width(); }
  std::uint32_t block_count() const;
  std::size_t values_in_block(std::uint32_t block) const;
  const StreamEntry& entry(std::uint32_t block, int cluster) const;
  /// Payload bytes of one stream. Offsets are prefix sums of the lengths,
  /// rebuilt by `index_offsets()` after `entries` change.
  ByteSpan stream(std::uint32_t block, int cluster) const;
  void index_offsets();

  std::size_t header_size() const;
  std::size_t serialized_size() const { return header_size() + payload.size(); }

 private:
  std::vector<std::uint64_t> offsets_;
};

Bytes serialize(const Container& c);

/// Validates magic, version and every structural field. Throws BadMagic,
/// UnsupportedVersion or CorruptStream.
Container parse_container(ByteSpan bytes);

/// Number of blocks needed to hold `value_count` words of `width` bytes.
std::uint32_t block_count_for(std::uint64_t value_count, FloatWidth width, std::uint32_t block_size);

std::uint32_t crc32(ByteSpan bytes);

}  // namespace tdt
