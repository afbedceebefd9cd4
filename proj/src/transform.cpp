#include "tdt/transform.hpp"

#include <cstring>

#include "tdt/kernels.hpp"

namespace tdt {

std::size_t stream_length(const ClusteringPlan& plan, int cluster, std::size_t value_count) {
  return plan.clusters()[static_cast<std::size_t>(cluster)].size() * value_count;
}

void pack_into(const TypedView& v, const ClusteringPlan& plan, std::vector<Bytes>& streams, Bytes& scratch) {
  if (plan.width() != v.width()) fail(ErrorCode::WidthMismatch, "plan width differs from data width");
  const std::size_t count = v.value_count();
  const auto n = static_cast<std::size_t>(v.width().bytes());
  const auto& clusters = plan.clusters();
  streams.resize(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) streams[c].resize(clusters[c].size() * count);
  if (count == 0) return;

  if (plan.packing() == Packing::same_byte) {
    scratch.resize(n * count);
    kernels::active().transpose(v.data().data(), count, static_cast<int>(n), scratch.data());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      std::uint8_t* dst = streams[c].data();
      for (int pos : clusters[c]) {
        std::memcpy(dst, scratch.data() + static_cast<std::size_t>(pos - 1) * count, count);
        dst += count;
      }
    }
    return;
  }

  const std::uint8_t* src = v.data().data();
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    std::uint8_t* dst = streams[c].data();
    if (cl.size() == n) {
      std::memcpy(dst, src, n * count);
      continue;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t* word = src + i * n;
      for (int pos : cl) *dst++ = word[pos - 1];
    }
  }
}

PackedBlock pack(const TypedView& v, const ClusteringPlan& plan) {
  PackedBlock out{plan, {}, v.value_count()};
  Bytes scratch;
  pack_into(v, plan, out.streams, scratch);
  return out;
}

void unpack_into(std::span<const ByteSpan> streams, const ClusteringPlan& plan, std::size_t count,
                 std::span<std::uint8_t> out, Bytes& scratch) {
  const auto n = static_cast<std::size_t>(plan.width().bytes());
  const auto& clusters = plan.clusters();
  if (streams.size() != clusters.size()) fail(ErrorCode::InconsistentLengths, "stream count differs from cluster count");
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (streams[c].size() != clusters[c].size() * count) {
      fail(ErrorCode::InconsistentLengths, "stream " + std::to_string(c) + " has " + std::to_string(streams[c].size()) +
                                               " bytes, expected " + std::to_string(clusters[c].size() * count));
    }
  }
  if (out.size() != n * count) fail(ErrorCode::InconsistentLengths, "output buffer size mismatch");
  if (count == 0) return;

  if (plan.packing() == Packing::same_byte) {
    scratch.resize(n * count);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const std::uint8_t* src = streams[c].data();
      for (int pos : clusters[c]) {
        std::memcpy(scratch.data() + static_cast<std::size_t>(pos - 1) * count, src, count);
        src += count;
      }
    }
    kernels::active().untranspose(scratch.data(), count, static_cast<int>(n), out.data());
    return;
  }

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& cl = clusters[c];
    const std::uint8_t* src = streams[c].data();
    if (cl.size() == n) {
      std::memcpy(out.data(), src, n * count);
      continue;
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::uint8_t* word = out.data() + i * n;
      for (int pos : cl) word[pos - 1] = *src++;
    }
  }
}

Bytes unpack(const PackedBlock& p) {
  std::vector<ByteSpan> spans(p.streams.begin(), p.streams.end());
  Bytes out(p.value_count * static_cast<std::size_t>(p.plan.width().bytes()));
  Bytes scratch;
  unpack_into(spans, p.plan, p.value_count, out, scratch);
  return out;
}

}  // namespace tdt
