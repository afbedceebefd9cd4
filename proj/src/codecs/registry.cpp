#include <bit>
#include <mutex>

#include "tdt/codec.hpp"

namespace tdt {

void validate(const CodecParams& p) {
  if (p.lz77_window < 256 || p.lz77_window > 65536 || !std::has_single_bit(p.lz77_window)) {
    fail(ErrorCode::InvalidArgument, "lz77 window must be a power of two in [256, 65536]");
  }
  if (p.lz77_min_match < 3 || p.lz77_min_match > 255) fail(ErrorCode::InvalidArgument, "lz77 min_match must be in [3, 255]");
  if (p.xor_word_width < 1 || p.xor_word_width > 8) fail(ErrorCode::InvalidArgument, "xor word width must be 1..8 bytes");
}

CodecRegistry::CodecRegistry() {
  add({codec_id::store, "store", [](ByteSpan in, const CodecParams&) { return store::compress(in); },
       [](ByteSpan in, std::size_t limit) { return store::decompress(in, limit); }});
  add({codec_id::lz77, "lz77", [](ByteSpan in, const CodecParams& p) { return lz77::compress(in, p); },
       [](ByteSpan in, std::size_t limit) { return lz77::decompress(in, limit); }});
  add({codec_id::huffman, "huffman", [](ByteSpan in, const CodecParams&) { return huffman::compress(in); },
       [](ByteSpan in, std::size_t limit) { return huffman::decompress(in, limit); }});
  add({codec_id::xor_delta, "xor_delta",
       [](ByteSpan in, const CodecParams& p) { return xor_delta::compress(in, p.xor_word_width); },
       [](ByteSpan in, std::size_t limit) { return xor_delta::decompress(in, limit); }});
}

CodecRegistry& CodecRegistry::global() {
  static CodecRegistry registry;
  static const bool loaded = (register_available_external(registry), true);
  (void)loaded;
  return registry;
}

void CodecRegistry::add(CodecAdapter adapter) {
  const CodecId id = adapter.id;
  codecs_.emplace(id, std::move(adapter));
}

CodecId CodecRegistry::register_external(CodecAdapter adapter) {
  if (adapter.id < codec_id::first_external) {
    fail(ErrorCode::DuplicateId, "codec id " + std::to_string(adapter.id) + " is reserved for built-in codecs");
  }
  if (!adapter.compress || !adapter.decompress) fail(ErrorCode::InvalidArgument, "adapter must supply compress and decompress");
  std::unique_lock lock(mutex_);
  for (const auto& [id, c] : codecs_) {
    if (id == adapter.id) fail(ErrorCode::DuplicateId, "codec id " + std::to_string(id) + " already registered");
    if (c.name == adapter.name) fail(ErrorCode::DuplicateId, "codec name '" + c.name + "' already registered");
  }
  const CodecId id = adapter.id;
  add(std::move(adapter));
  return id;
}

const CodecAdapter& CodecRegistry::get(CodecId id) const {
  std::shared_lock lock(mutex_);
  auto it = codecs_.find(id);
  if (it == codecs_.end()) fail(ErrorCode::UnknownCodec, "codec id " + std::to_string(id) + " is not registered");
  // Map nodes are never erased, so the reference outlives the lock.
  return it->second;
}

bool CodecRegistry::contains(CodecId id) const {
  std::shared_lock lock(mutex_);
  return codecs_.count(id) != 0;
}

CodecId CodecRegistry::id_of(std::string_view name) const {
  std::shared_lock lock(mutex_);
  for (const auto& [id, c] : codecs_)
    if (c.name == name) return id;
  fail(ErrorCode::UnknownCodec, "codec '" + std::string(name) + "' is not registered");
}

std::string CodecRegistry::name_of(CodecId id) const { return get(id).name; }

std::vector<CodecId> CodecRegistry::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<CodecId> out;
  for (const auto& [id, c] : codecs_) out.push_back(id);
  return out;
}

Bytes CodecRegistry::compress(CodecId id, const CodecParams& params, ByteSpan input) const {
  return get(id).compress(input, params);
}

Bytes CodecRegistry::decompress(CodecId id, ByteSpan input, std::size_t size_limit) const {
  return get(id).decompress(input, size_limit);
}

Bytes compress(CodecId id, const CodecParams& params, ByteSpan input) {
  return CodecRegistry::global().compress(id, params, input);
}

Bytes decompress(CodecId id, ByteSpan input, std::size_t size_limit) {
  return CodecRegistry::global().decompress(id, input, size_limit);
}

}  // namespace tdt
