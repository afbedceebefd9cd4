#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tdt/typed.hpp"

namespace tdt {

/// Stable integer identifier written into containers.
using CodecId = std::uint16_t;

namespace codec_id {
inline constexpr CodecId store = 1;
inline constexpr CodecId lz77 = 2;
inline constexpr CodecId huffman = 3;
inline constexpr CodecId xor_delta = 4;
inline constexpr CodecId first_external = 16;
inline constexpr CodecId zstd = 16;
inline constexpr CodecId snappy = 17;
inline constexpr CodecId lz4 = 18;
inline constexpr CodecId zlib = 19;
inline constexpr CodecId bzip2 = 20;
}  // namespace codec_id

struct CodecParams {
  std::size_t lz77_window = 65536;  // power of two in [256, 65536]
  int lz77_min_match = 4;           // >= 3
  bool lz77_lazy = false;           // one-step lazy match evaluation
  int xor_word_width = 4;           // bytes per XOR word, 1..8
  int level = 0;                    // external codecs only; 0 = library default
};

void validate(const CodecParams& params);

/// Inputs may be empty. `size_limit` bounds the decoded size; streams that
/// claim more are rejected as corrupt.
using CompressFn = std::function<Bytes(ByteSpan input, const CodecParams& params)>;
using DecompressFn = std::function<Bytes(ByteSpan input, std::size_t size_limit)>;

struct CodecAdapter {
  CodecId id;
  std::string name;
  CompressFn compress;
  DecompressFn decompress;
};

inline constexpr std::size_t kNoSizeLimit = std::numeric_limits<std::size_t>::max();

/// Codec lookup by id or name. Reads may run concurrently with each other
/// and with registration.
class CodecRegistry {
 public:
  /// Store, LZ77, Huffman and XOR-delta are always present.
  CodecRegistry();

  /// Foundational codecs plus every external library that could be loaded.
  static CodecRegistry& global();

  /// Ids below 16 are reserved; a taken id throws DuplicateId.
  CodecId register_external(CodecAdapter adapter);

  const CodecAdapter& get(CodecId id) const;
  bool contains(CodecId id) const;
  CodecId id_of(std::string_view name) const;
  std::string name_of(CodecId id) const;
  std::vector<CodecId> ids() const;

  Bytes compress(CodecId id, const CodecParams& params, ByteSpan input) const;
  Bytes decompress(CodecId id, ByteSpan input, std::size_t size_limit = kNoSizeLimit) const;

 private:
  void add(CodecAdapter adapter);

  mutable std::shared_mutex mutex_;
  std::map<CodecId, CodecAdapter> codecs_;
};

/// Convenience wrappers over CodecRegistry::global().
Bytes compress(CodecId id, const CodecParams& params, ByteSpan input);
Bytes decompress(CodecId id, ByteSpan input, std::size_t size_limit = kNoSizeLimit);

/// Registers adapters for zlib, zstd, snappy, lz4 and bzip2 when the library
/// is linked or can be loaded at runtime. Returns the ids that were added.
std::vector<CodecId> register_available_external(CodecRegistry& registry);

namespace store {
Bytes compress(ByteSpan input);
Bytes decompress(ByteSpan input, std::size_t size_limit = kNoSizeLimit);
}  // namespace store

namespace lz77 {
Bytes compress(ByteSpan input, const CodecParams& params = {});
Bytes decompress(ByteSpan input, std::size_t size_limit = kNoSizeLimit);
/// Upper bound on the compressed size of any `n`-byte input.
std::size_t max_compressed_size(std::size_t n);
}  // namespace lz77

namespace huffman {
Bytes compress(ByteSpan input);
Bytes decompress(ByteSpan input, std::size_t size_limit = kNoSizeLimit);

struct Layout {
  std::size_t header_bytes;  // length varint + code-length table
  std::size_t payload_bits;  // coded symbols, excluding final padding
};
Layout inspect(ByteSpan compressed);

/// Code lengths (0 for absent symbols) limited to `max_length` bits.
std::array<std::uint8_t, 256> code_lengths(const std::array<std::uint64_t, 256>& counts, int max_length = 15);
}  // namespace huffman

namespace xor_delta {
Bytes compress(ByteSpan input, int word_width);
Bytes decompress(ByteSpan input, std::size_t size_limit = kNoSizeLimit);
}  // namespace xor_delta

}  // namespace tdt
