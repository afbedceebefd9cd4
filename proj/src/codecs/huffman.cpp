// Canonical Huffman coding over bytes.
//
// Stream: varint(raw size) | code-length table | MSB-first code bits, zero
// padded to a byte. Table mode 0 (sparse): u8(symbols - 1), then
// (symbol, length) pairs in symbol order. Mode 1 (dense): 128 bytes, two
// 4-bit lengths per byte, even symbol in the high nibble. Lengths are 1..15.

#include <algorithm>
#include <numeric>
#include <queue>

#include "codecs/stream_io.hpp"
#include "tdt/codec.hpp"
#include "tdt/features.hpp"

namespace tdt::huffman {
namespace {

constexpr int kMaxLength = 15;

using Lengths = std::array<std::uint8_t, 256>;

// Unlimited Huffman code lengths; ties resolved by node creation order.
Lengths plain_lengths(const std::array<std::uint64_t, 256>& counts) {
  struct Node {
    std::uint64_t weight;
    int id;
    bool operator>(const Node& o) const { return weight != o.weight ? weight > o.weight : id > o.id; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  std::vector<int> parent;
  for (int s = 0; s < 256; ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) continue;
    heap.push({counts[static_cast<std::size_t>(s)], static_cast<int>(parent.size())});
    parent.push_back(-1);
  }
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    const int id = static_cast<int>(parent.size());
    parent.push_back(-1);
    parent[static_cast<std::size_t>(a.id)] = id;
    parent[static_cast<std::size_t>(b.id)] = id;
    heap.push({a.weight + b.weight, id});
  }
  Lengths len{};
  int leaf = 0;
  for (int s = 0; s < 256; ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) continue;
    int depth = 0;
    for (int x = leaf; parent[static_cast<std::size_t>(x)] >= 0; x = parent[static_cast<std::size_t>(x)]) ++depth;
    len[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(std::max(depth, 1));
    ++leaf;
  }
  return len;
}

// Package-merge: optimal code lengths subject to a maximum length.
Lengths package_merge(const std::array<std::uint64_t, 256>& counts, int max_length) {
  struct Item {
    std::uint64_t weight;
    std::array<std::uint8_t, 256> uses;
  };
  std::vector<Item> leaves;
  for (int s = 0; s < 256; ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) continue;
    Item it{counts[static_cast<std::size_t>(s)], {}};
    it.uses[static_cast<std::size_t>(s)] = 1;
    leaves.push_back(it);
  }
  std::stable_sort(leaves.begin(), leaves.end(), [](const Item& a, const Item& b) { return a.weight < b.weight; });

  std::vector<Item> list = leaves;
  for (int level = 1; level < max_length; ++level) {
    std::vector<Item> packages;
    for (std::size_t i = 0; i + 1 < list.size(); i += 2) {
      Item p{list[i].weight + list[i + 1].weight, {}};
      for (std::size_t s = 0; s < 256; ++s) p.uses[s] = static_cast<std::uint8_t>(list[i].uses[s] + list[i + 1].uses[s]);
      packages.push_back(p);
    }
    std::vector<Item> merged;
    merged.reserve(leaves.size() + packages.size());
    std::merge(leaves.begin(), leaves.end(), packages.begin(), packages.end(), std::back_inserter(merged),
               [](const Item& a, const Item& b) { return a.weight < b.weight; });
    list = std::move(merged);
  }
  Lengths len{};
  const std::size_t take = 2 * leaves.size() - 2;
  for (std::size_t i = 0; i < take; ++i)
    for (std::size_t s = 0; s < 256; ++s) len[s] = static_cast<std::uint8_t>(len[s] + list[i].uses[s]);
  return len;
}

struct Code {
  std::uint16_t bits;
  std::uint8_t length;
};

// Canonical assignment: shorter codes first, ties by symbol value.
std::array<Code, 256> canonical_codes(const Lengths& len) {
  std::array<Code, 256> codes{};
  std::array<int, kMaxLength + 2> bl_count{};
  for (auto l : len) ++bl_count[l];
  bl_count[0] = 0;
  std::array<int, kMaxLength + 2> next{};
  int code = 0;
  for (int bits = 1; bits <= kMaxLength; ++bits) {
    code = (code + bl_count[static_cast<std::size_t>(bits - 1)]) << 1;
    next[static_cast<std::size_t>(bits)] = code;
  }
  for (std::size_t s = 0; s < 256; ++s) {
    if (len[s] == 0) continue;
    codes[s] = {static_cast<std::uint16_t>(next[len[s]]++), len[s]};
  }
  return codes;
}

void write_table(Bytes& out, const Lengths& len) {
  int used = 0;
  for (auto l : len) used += l != 0;
  if (1 + 2 * used < 1 + 128) {
    out.push_back(0);
    out.push_back(static_cast<std::uint8_t>(used - 1));
    for (std::size_t s = 0; s < 256; ++s) {
      if (len[s] == 0) continue;
      out.push_back(static_cast<std::uint8_t>(s));
      out.push_back(len[s]);
    }
  } else {
    out.push_back(1);
    for (std::size_t s = 0; s < 256; s += 2) out.push_back(static_cast<std::uint8_t>((len[s] << 4) | len[s + 1]));
  }
}

Lengths read_table(detail::ByteReader& in) {
  Lengths len{};
  const std::uint8_t mode = in.u8();
  if (mode == 0) {
    const int used = in.u8() + 1;
    int last = -1;
    for (int i = 0; i < used; ++i) {
      const int s = in.u8();
      const int l = in.u8();
      if (s <= last) in.fail_here("symbols not in ascending order");
      if (l < 1 || l > kMaxLength) in.fail_here("code length out of range");
      len[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(l);
      last = s;
    }
  } else if (mode == 1) {
    for (std::size_t s = 0; s < 256; s += 2) {
      const std::uint8_t b = in.u8();
      len[s] = b >> 4;
      len[s + 1] = b & 0x0F;
    }
  } else {
    in.fail_here("unknown code table mode");
  }
  // Kraft sum must not exceed one.
  std::uint64_t kraft = 0;
  int used = 0;
  for (auto l : len) {
    if (l == 0) continue;
    kraft += std::uint64_t{1} << (kMaxLength - l);
    ++used;
  }
  if (used == 0) in.fail_here("empty code table");
  if (kraft > (std::uint64_t{1} << kMaxLength)) in.fail_here("code lengths violate the Kraft inequality");
  return len;
}

// Indexed by the next `max_len` bits: (symbol << 4) | length; 0 marks an unused code.
std::vector<std::uint16_t> decode_table(const Lengths& len, int max_len) {
  const auto codes = canonical_codes(len);
  std::vector<std::uint16_t> table(std::size_t{1} << max_len, 0);
  for (std::size_t s = 0; s < 256; ++s) {
    if (len[s] == 0) continue;
    const int shift = max_len - len[s];
    const std::size_t first = static_cast<std::size_t>(codes[s].bits) << shift;
    std::fill_n(table.begin() + static_cast<std::ptrdiff_t>(first), std::size_t{1} << shift,
                static_cast<std::uint16_t>((s << 4) | len[s]));
  }
  return table;
}

}  // namespace

std::array<std::uint8_t, 256> code_lengths(const std::array<std::uint64_t, 256>& counts, int max_length) {
  Lengths len = plain_lengths(counts);
  const int longest = *std::max_element(len.begin(), len.end());
  if (longest > max_length) len = package_merge(counts, max_length);
  return len;
}

Bytes compress(ByteSpan input) {
  Bytes out;
  detail::put_varint(out, input.size());
  if (input.empty()) return out;
  const auto counts = byte_histogram(input);
  const Lengths len = code_lengths(counts, kMaxLength);
  write_table(out, len);
  const auto codes = canonical_codes(len);
  out.reserve(out.size() + input.size() / 2 + 16);
  detail::BitWriter bits(out);
  for (std::uint8_t b : input) bits.put(codes[b].bits, codes[b].length);
  bits.flush();
  return out;
}

Bytes decompress(ByteSpan input, std::size_t size_limit) {
  detail::ByteReader in(input, "huffman");
  const std::uint64_t size = in.varint();
  if (size > size_limit) in.fail_here("declared size " + std::to_string(size) + " exceeds limit");
  if (size == 0) {
    if (!in.done()) in.fail_here("trailing bytes after empty stream");
    return {};
  }
  const Lengths len = read_table(in);
  const std::size_t payload_start = in.offset();
  if (size > static_cast<std::uint64_t>(in.remaining()) * 8) in.fail_here("payload too short for declared size");

  const int max_len = *std::max_element(len.begin(), len.end());
  const auto table = decode_table(len, max_len);

  Bytes out(static_cast<std::size_t>(size));
  detail::BitReader bits(in.rest(), "huffman");
  for (auto& o : out) {
    const std::uint16_t e = table[static_cast<std::size_t>(bits.peek(max_len))];
    if (e == 0) detail::corrupt("huffman", payload_start + static_cast<std::size_t>(bits.bits_used() / 8), "invalid code");
    bits.consume(e & 0x0F);
    o = static_cast<std::uint8_t>(e >> 4);
  }
  if (!bits.at_padding()) {
    detail::corrupt("huffman", payload_start + static_cast<std::size_t>(bits.bits_used() / 8), "trailing data after payload");
  }
  return out;
}

Layout inspect(ByteSpan compressed) {
  detail::ByteReader in(compressed, "huffman");
  const std::uint64_t size = in.varint();
  if (size == 0) return {in.offset(), 0};
  const Lengths len = read_table(in);
  const std::size_t header = in.offset();
  const int max_len = *std::max_element(len.begin(), len.end());
  const auto table = decode_table(len, max_len);
  detail::BitReader bits(in.rest(), "huffman");
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint16_t e = table[static_cast<std::size_t>(bits.peek(max_len))];
    if (e == 0) detail::corrupt("huffman", header, "invalid code");
    bits.consume(e & 0x0F);
  }
  return {header, static_cast<std::size_t>(bits.bits_used())};
}

}  // namespace tdt::huffman
