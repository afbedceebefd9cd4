// Container layout (all integers little-endian):
//   "TDT1" | u8 version | u16 codec | u8 width | u8 packing | u32 block_size |
//   u64 value_count | u8 cluster_count | u8 assignment[width] | u32 block_count |
//   { u32 length (MSB = stored) | u32 crc32 } [block_count * cluster_count] |
//   u16 tail_length | tail | payload

#include "tdt/container.hpp"

#include <zlib.h>

#include <cstring>
#include <limits>

namespace tdt {
namespace {

constexpr char kMagic[4] = {'T', 'D', 'T', '1'};
constexpr std::size_t kFixedHeader = 4 + 1 + 2 + 1 + 1 + 4 + 8;
constexpr std::uint32_t kStoredFlag = 0x80000000u;
constexpr std::size_t kEntryBytes = 8;

template <typename T>
void put_le(Bytes& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(ByteSpan in) : in_(in) {}

  template <typename T>
  T le(const char* field) {
    need(sizeof(T), field);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }

  ByteSpan take(std::size_t n, const char* field) {
    need(n, field);
    ByteSpan s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

  [[noreturn]] void bad(const std::string& what) const {
    fail(ErrorCode::CorruptStream, "container header, byte offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  void need(std::size_t n, const char* field) {
    if (n > remaining()) bad(std::string("truncated while reading ") + field);
  }

  ByteSpan in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t crc32(ByteSpan bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = ::crc32(crc, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::uint32_t block_count_for(std::uint64_t value_count, FloatWidth width, std::uint32_t block_size) {
  if (block_size == 0) fail(ErrorCode::InvalidArgument, "block size must be positive");
  const std::uint64_t per_block = block_size / static_cast<std::uint32_t>(width.bytes());
  const std::uint64_t blocks = (value_count + per_block - 1) / per_block;
  if (blocks > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidArgument, "too many blocks");
  return static_cast<std::uint32_t>(blocks);
}

std::uint32_t Container::block_count() const { return block_count_for(value_count, width(), block_size); }

std::size_t Container::values_in_block(std::uint32_t block) const {
  const std::uint64_t per_block = block_size / static_cast<std::uint32_t>(width().bytes());
  const std::uint64_t first = std::uint64_t{block} * per_block;
  return static_cast<std::size_t>(std::min(per_block, value_count - first));
}

const StreamEntry& Container::entry(std::uint32_t block, int cluster) const {
  return entries[static_cast<std::size_t>(block) * static_cast<std::size_t>(plan.cluster_count()) +
                 static_cast<std::size_t>(cluster)];
}

void Container::index_offsets() {
  offsets_.assign(entries.size() + 1, 0);
  for (std::size_t i = 0; i < entries.size(); ++i) offsets_[i + 1] = offsets_[i] + entries[i].length;
}

ByteSpan Container::stream(std::uint32_t block, int cluster) const {
  const std::size_t i = static_cast<std::size_t>(block) * static_cast<std::size_t>(plan.cluster_count()) +
                        static_cast<std::size_t>(cluster);
  if (offsets_.size() != entries.size() + 1) fail(ErrorCode::InvalidArgument, "container offsets not indexed");
  return ByteSpan(payload).subspan(static_cast<std::size_t>(offsets_[i]), entries[i].length);
}

std::size_t Container::header_size() const {
  return kFixedHeader + 1 + static_cast<std::size_t>(width().bytes()) + 4 + entries.size() * kEntryBytes + 2 +
         tail.size();
}

Bytes serialize(const Container& c) {
  const int n = c.width().bytes();
  const std::uint32_t blocks = c.block_count();
  if (c.entries.size() != static_cast<std::size_t>(blocks) * static_cast<std::size_t>(c.plan.cluster_count())) {
    fail(ErrorCode::InconsistentLengths, "offset table does not match block and cluster counts");
  }
  if (c.tail.size() >= static_cast<std::size_t>(n)) fail(ErrorCode::InvalidArgument, "tail must be shorter than one word");

  Bytes out;
  out.reserve(c.serialized_size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kContainerVersion);
  put_le<std::uint16_t>(out, c.codec);
  out.push_back(static_cast<std::uint8_t>(n));
  out.push_back(static_cast<std::uint8_t>(c.plan.packing()));
  put_le<std::uint32_t>(out, c.block_size);
  put_le<std::uint64_t>(out, c.value_count);
  out.push_back(static_cast<std::uint8_t>(c.plan.cluster_count()));
  for (std::uint8_t a : c.plan.assignment()) out.push_back(a);
  put_le<std::uint32_t>(out, blocks);
  std::uint64_t total = 0;
  for (const auto& e : c.entries) {
    if (e.length & kStoredFlag) fail(ErrorCode::InvalidArgument, "stream too large for the offset table");
    put_le<std::uint32_t>(out, e.length | (e.stored ? kStoredFlag : 0u));
    put_le<std::uint32_t>(out, e.crc);
    total += e.length;
  }
  if (total != c.payload.size()) fail(ErrorCode::InconsistentLengths, "offset table does not cover the payload");
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(c.tail.size()));
  out.insert(out.end(), c.tail.begin(), c.tail.end());
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

Container parse_container(ByteSpan bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    fail(ErrorCode::BadMagic, "not a TDT container (expected magic \"TDT1\")");
  }
  Reader r(bytes);
  r.take(4, "magic");
  const auto version = r.le<std::uint8_t>("version");
  if (version != kContainerVersion) {
    fail(ErrorCode::UnsupportedVersion, "container version " + std::to_string(version) + " is not supported (expected " +
                                            std::to_string(kContainerVersion) + ")");
  }
  const auto codec = r.le<std::uint16_t>("codec id");
  const auto width_byte = r.le<std::uint8_t>("width");
  if (width_byte != 2 && width_byte != 4 && width_byte != 8) r.bad("invalid word width " + std::to_string(width_byte));
  const FloatWidth width(width_byte);
  const auto packing_byte = r.le<std::uint8_t>("packing");
  if (packing_byte > 1) r.bad("invalid packing " + std::to_string(packing_byte));
  const auto block_size = r.le<std::uint32_t>("block size");
  if (block_size == 0 || block_size > kMaxBlockSize || block_size % width_byte != 0) r.bad("invalid block size");
  const auto value_count = r.le<std::uint64_t>("value count");
  if (value_count > std::numeric_limits<std::uint64_t>::max() / 8) r.bad("value count out of range");
  const auto cluster_count = r.le<std::uint8_t>("cluster count");
  if (cluster_count < 1 || cluster_count > width_byte) r.bad("invalid cluster count");
  const ByteSpan assignment = r.take(width_byte, "plan");

  std::optional<ClusteringPlan> plan;
  try {
    plan.emplace(ClusteringPlan::from_assignment(width, assignment, static_cast<Packing>(packing_byte)));
  } catch (const Error& e) {
    r.bad(std::string("invalid plan: ") + e.what());
  }
  if (plan->cluster_count() != cluster_count) r.bad("cluster count disagrees with plan");

  Container c(std::move(*plan));
  c.codec = codec;
  c.block_size = block_size;
  c.value_count = value_count;
  const auto blocks = r.le<std::uint32_t>("block count");
  if (blocks != c.block_count()) r.bad("block count disagrees with value count and block size");
  const std::uint64_t n_entries = std::uint64_t{blocks} * cluster_count;
  if (n_entries * kEntryBytes > r.remaining()) r.bad("truncated offset table");
  c.entries.resize(static_cast<std::size_t>(n_entries));
  std::uint64_t total = 0;
  for (auto& e : c.entries) {
    const auto len = r.le<std::uint32_t>("stream length");
    e.stored = (len & kStoredFlag) != 0;
    e.length = len & ~kStoredFlag;
    e.crc = r.le<std::uint32_t>("stream checksum");
    total += e.length;
  }
  const auto tail_len = r.le<std::uint16_t>("tail length");
  if (tail_len >= width_byte) r.bad("tail longer than one word");
  const ByteSpan tail = r.take(tail_len, "tail");
  c.tail.assign(tail.begin(), tail.end());
  if (total != r.remaining()) {
    r.bad("payload is " + std::to_string(r.remaining()) + " bytes but the offset table describes " + std::to_string(total));
  }
  const ByteSpan payload = r.take(static_cast<std::size_t>(total), "payload");
  c.payload.assign(payload.begin(), payload.end());
  c.index_offsets();
  return c;
}

}  // namespace tdt
