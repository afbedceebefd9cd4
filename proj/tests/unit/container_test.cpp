#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <random>

#include "oracles.hpp"
#include "tdt/container.hpp"
#include "tdt/pipeline.hpp"

using namespace tdt;

namespace {

Bytes read_golden(const std::string& name) {
  std::ifstream f(std::string(TDT_GOLDEN_DIR) + "/" + name, std::ios::binary);
  EXPECT_TRUE(f) << name;
  return Bytes(std::istreambuf_iterator<char>(f), {});
}

ErrorCode parse_code(ByteSpan b) {
  try {
    parse_container(b);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

Container sample(std::size_t values, std::uint32_t block_size, ByteSpan tail = {}) {
  const Bytes data = oracle::random_bytes(values * 4, values, 8);
  PipelineConfig cfg;
  cfg.block_size = block_size;
  return compress_pipeline(view(data, FloatWidth(4)), cfg, ClusteringPlan(FloatWidth(4), {{1, 2}, {3}, {4}}), tail);
}

std::uint32_t le32(const Bytes& b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

}  // namespace

TEST(Container, HeaderLayout) {
  const Bytes tail = {0xAB};
  const Container c = sample(100, 160, tail);
  const Bytes b = serialize(c);
  ASSERT_EQ(b.size(), c.serialized_size());
  EXPECT_EQ(std::memcmp(b.data(), "TDT1", 4), 0);
  EXPECT_EQ(b[4], kContainerVersion);
  EXPECT_EQ(b[5] | b[6] << 8, codec_id::lz77);
  EXPECT_EQ(b[7], 4);
  EXPECT_EQ(b[8], static_cast<std::uint8_t>(Packing::same_byte));
  EXPECT_EQ(le32(b, 9), 160u);
  EXPECT_EQ(le32(b, 13), 100u);
  EXPECT_EQ(le32(b, 17), 0u);
  EXPECT_EQ(b[21], 3);
  EXPECT_EQ((Bytes{b[22], b[23], b[24], b[25]}), (Bytes{0, 0, 1, 2}));
  EXPECT_EQ(le32(b, 26), 3u);  // ceil(100 / 40)
  const std::size_t table = 30;
  std::size_t payload = 0;
  for (std::size_t i = 0; i < 9; ++i) {
    const std::uint32_t len = le32(b, table + 8 * i) & 0x7FFFFFFFu;
    EXPECT_EQ(len, c.entries[i].length);
    EXPECT_EQ(le32(b, table + 8 * i + 4), c.entries[i].crc);
    payload += len;
  }
  const std::size_t tail_at = table + 9 * 8;
  EXPECT_EQ(b[tail_at] | b[tail_at + 1] << 8, 1);
  EXPECT_EQ(b[tail_at + 2], 0xAB);
  EXPECT_EQ(tail_at + 3 + payload, b.size());
  EXPECT_EQ(c.header_size(), tail_at + 3);
}

TEST(Container, SerializeParseRoundTrip) {
  const Bytes tail = {1, 2, 3};
  const Container c = sample(1000, 400, tail);
  const Container p = parse_container(serialize(c));
  EXPECT_EQ(p.codec, c.codec);
  EXPECT_EQ(p.plan, c.plan);
  EXPECT_EQ(p.block_size, c.block_size);
  EXPECT_EQ(p.value_count, c.value_count);
  EXPECT_EQ(p.tail, c.tail);
  EXPECT_EQ(p.payload, c.payload);
  ASSERT_EQ(p.entries.size(), c.entries.size());
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    EXPECT_EQ(p.entries[i].length, c.entries[i].length);
    EXPECT_EQ(p.entries[i].stored, c.entries[i].stored);
    EXPECT_EQ(p.entries[i].crc, c.entries[i].crc);
  }
  EXPECT_EQ(serialize(p), serialize(c));
}

TEST(Container, StreamsAreLocatedByPrefixSums) {
  const Container c = sample(1000, 400);
  std::size_t at = 0;
  for (std::uint32_t b = 0; b < c.block_count(); ++b)
    for (int k = 0; k < c.plan.cluster_count(); ++k) {
      const ByteSpan s = c.stream(b, k);
      EXPECT_EQ(s.data(), c.payload.data() + at);
      EXPECT_EQ(s.size(), c.entry(b, k).length);
      EXPECT_EQ(crc32(s), c.entry(b, k).crc);
      at += s.size();
    }
  EXPECT_EQ(at, c.payload.size());
}

TEST(Container, BlockArithmetic) {
  EXPECT_EQ(block_count_for(0, FloatWidth(4), 64), 0u);
  EXPECT_EQ(block_count_for(16, FloatWidth(4), 64), 1u);
  EXPECT_EQ(block_count_for(17, FloatWidth(4), 64), 2u);
  EXPECT_EQ(block_count_for(5, FloatWidth(8), 8), 5u);
  const Container c = sample(100, 160);
  EXPECT_EQ(c.values_in_block(0), 40u);
  EXPECT_EQ(c.values_in_block(2), 20u);
}

TEST(Container, Crc32KnownValue) {
  const std::string s = "123456789";
  EXPECT_EQ(crc32(ByteSpan(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())), 0xCBF43926u);
  EXPECT_EQ(crc32({}), 0u);
}

TEST(Container, RejectsBadMagicAndVersion) {
  Bytes b = serialize(sample(10, 64));
  EXPECT_EQ(parse_code(Bytes{}), ErrorCode::BadMagic);
  EXPECT_EQ(parse_code(Bytes{'T', 'D'}), ErrorCode::BadMagic);
  Bytes bad = b;
  bad[3] = '2';
  EXPECT_EQ(parse_code(bad), ErrorCode::BadMagic);
  bad = b;
  bad[4] = 9;
  EXPECT_EQ(parse_code(bad), ErrorCode::UnsupportedVersion);
}

TEST(Container, RejectsStructuralDamage) {
  const Bytes b = serialize(sample(100, 160, Bytes{7}));
  auto damaged = [&](std::size_t at, std::uint8_t value) {
    Bytes d = b;
    d[at] = value;
    return parse_code(d);
  };
  EXPECT_EQ(damaged(7, 3), ErrorCode::CorruptStream);    // width
  EXPECT_EQ(damaged(8, 2), ErrorCode::CorruptStream);    // packing
  EXPECT_EQ(damaged(9, 161), ErrorCode::CorruptStream);  // block size not word aligned
  EXPECT_EQ(damaged(13, 200), ErrorCode::CorruptStream);  // value count vs block count
  EXPECT_EQ(damaged(21, 5), ErrorCode::CorruptStream);   // cluster count
  EXPECT_EQ(damaged(22, 1), ErrorCode::CorruptStream);   // non-canonical assignment
  EXPECT_EQ(damaged(30, static_cast<std::uint8_t>(b[30] + 1)), ErrorCode::CorruptStream);  // stream length
  EXPECT_EQ(damaged(102, 5), ErrorCode::CorruptStream);  // tail length
  try {
    parse_container(ByteSpan(b).first(b.size() - 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptStream);
    EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos) << e.what();
  }
}

TEST(Container, EveryTruncationIsRejected) {
  const Bytes b = serialize(sample(100, 160, Bytes{7, 8}));
  for (std::size_t n = 0; n < b.size(); ++n) {
    const ErrorCode code = parse_code(ByteSpan(b).first(n));
    EXPECT_TRUE(code == ErrorCode::BadMagic || code == ErrorCode::CorruptStream) << n;
  }
  Bytes longer = b;
  longer.push_back(0);
  EXPECT_EQ(parse_code(longer), ErrorCode::CorruptStream);
}

TEST(Container, SerializeChecksConsistency) {
  Container c = sample(100, 160);
  c.entries.pop_back();
  EXPECT_THROW(serialize(c), Error);
  c = sample(100, 160);
  c.payload.push_back(0);
  EXPECT_THROW(serialize(c), Error);
  c = sample(100, 160);
  c.tail = {1, 2, 3, 4};
  EXPECT_THROW(serialize(c), Error);
}

TEST(Golden, SeriesContainer) {
  const Bytes raw = read_golden("series_f32.raw");
  const Bytes tdt = read_golden("series_f32.tdt");
  ASSERT_EQ(raw.size(), 80u * 4 + 2);
  EXPECT_EQ(decompress_pipeline(tdt), raw);

  PipelineConfig cfg;
  cfg.block_size = 128;
  const std::size_t body = raw.size() / 4 * 4;
  const Container c = compress_pipeline(view(ByteSpan(raw).first(body), FloatWidth(4)), cfg,
                                        ClusteringPlan(FloatWidth(4), {{1, 2}, {3}, {4}}), ByteSpan(raw).subspan(body));
  EXPECT_EQ(serialize(c), tdt);
}

TEST(Golden, EmptyContainer) {
  const Bytes tdt = read_golden("empty_f64.tdt");
  const Container c = parse_container(tdt);
  EXPECT_EQ(c.block_count(), 0u);
  EXPECT_EQ(c.value_count, 0u);
  EXPECT_EQ(c.width().bytes(), 8);
  EXPECT_TRUE(decompress_pipeline(c).empty());
}
