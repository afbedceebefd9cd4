#pragma once

#include <span>
#include <vector>

#include "tdt/typed.hpp"

namespace tdt {

/// A block after the transform: one byte stream per cluster, in plan order.
struct PackedBlock {
  ClusteringPlan plan;
  std::vector<Bytes> streams;
  std::size_t value_count = 0;
};

/// Bytes produced for cluster `cluster` of a block of `value_count` values.
std::size_t stream_length(const ClusteringPlan& plan, int cluster, std::size_t value_count);

PackedBlock pack(const TypedView& v, const ClusteringPlan& plan);

/// Gather every cluster stream of `v` into `streams`, reusing their storage.
/// `scratch` holds the byte-plane transpose for same-byte packing.
void pack_into(const TypedView& v, const ClusteringPlan& plan, std::vector<Bytes>& streams, Bytes& scratch);

/// Inverse of pack; the result is exactly the original bytes.
Bytes unpack(const PackedBlock& p);

/// Scatter `streams` back into `out` (value_count * width bytes).
void unpack_into(std::span<const ByteSpan> streams, const ClusteringPlan& plan, std::size_t value_count,
                 std::span<std::uint8_t> out, Bytes& scratch);

}  // namespace tdt
