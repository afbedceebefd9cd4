// Adapters for hybrid compressors. zlib is linked at build time; zstd,
// snappy, lz4 and bzip2 are resolved with dlopen so a missing library only
// removes that codec. Every adapter frames the library output as
// varint(raw size) | library payload.

#include <dlfcn.h>

#include <algorithm>
#include <cstring>
#include <optional>
#include <limits>

#include "codecs/stream_io.hpp"
#include "tdt/codec.hpp"

#if defined(TDT_HAVE_ZLIB)
#include <zlib.h>
#endif

namespace tdt {
namespace {

struct Framed {
  std::uint64_t size;
  ByteSpan payload;
};

Framed read_frame(ByteSpan in, const char* codec, std::size_t size_limit) {
  detail::ByteReader r(in, codec);
  const std::uint64_t size = r.varint();
  if (size > size_limit) r.fail_here("declared size exceeds limit");
  return {size, r.rest()};
}

Bytes start_frame(std::size_t raw_size, std::size_t bound) {
  Bytes out;
  detail::put_varint(out, raw_size);
  out.reserve(out.size() + bound);
  return out;
}

void* open_library(std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (void* h = dlopen(name, RTLD_NOW | RTLD_LOCAL)) return h;
  }
  return nullptr;
}

template <typename Fn>
Fn symbol(void* lib, const char* name) {
  return lib ? reinterpret_cast<Fn>(dlsym(lib, name)) : nullptr;
}

#if defined(TDT_HAVE_ZLIB)
CodecAdapter zlib_adapter() {
  auto comp = [](ByteSpan in, const CodecParams& p) {
    uLongf cap = compressBound(static_cast<uLong>(in.size()));
    Bytes out = start_frame(in.size(), cap);
    const std::size_t head = out.size();
    out.resize(head + cap);
    const int level = p.level == 0 ? Z_DEFAULT_COMPRESSION : p.level;
    if (compress2(out.data() + head, &cap, in.data(), static_cast<uLong>(in.size()), level) != Z_OK) {
      fail(ErrorCode::InvalidArgument, "zlib compression failed");
    }
    out.resize(head + cap);
    return out;
  };
  auto decomp = [](ByteSpan in, std::size_t limit) {
    const Framed f = read_frame(in, "zlib", limit);
    Bytes out(static_cast<std::size_t>(f.size));
    uLongf len = static_cast<uLongf>(f.size);
    if (uncompress(out.data(), &len, f.payload.data(), static_cast<uLong>(f.payload.size())) != Z_OK || len != f.size) {
      detail::corrupt("zlib", 0, "inflate failed");
    }
    return out;
  };
  return {codec_id::zlib, "zlib", comp, decomp};
}
#endif

std::optional<CodecAdapter> zstd_adapter() {
  void* lib = open_library({"libzstd.so.1", "libzstd.so"});
  using BoundFn = std::size_t (*)(std::size_t);
  using CompFn = std::size_t (*)(void*, std::size_t, const void*, std::size_t, int);
  using DecompFn = std::size_t (*)(void*, std::size_t, const void*, std::size_t);
  using IsErrFn = unsigned (*)(std::size_t);
  auto bound = symbol<BoundFn>(lib, "ZSTD_compressBound");
  auto zc = symbol<CompFn>(lib, "ZSTD_compress");
  auto zd = symbol<DecompFn>(lib, "ZSTD_decompress");
  auto is_err = symbol<IsErrFn>(lib, "ZSTD_isError");
  if (!bound || !zc || !zd || !is_err) return std::nullopt;
  auto comp = [=](ByteSpan in, const CodecParams& p) {
    const std::size_t cap = bound(in.size());
    Bytes out = start_frame(in.size(), cap);
    const std::size_t head = out.size();
    out.resize(head + cap);
    const std::size_t n = zc(out.data() + head, cap, in.data(), in.size(), p.level == 0 ? 3 : p.level);
    if (is_err(n)) fail(ErrorCode::InvalidArgument, "zstd compression failed");
    out.resize(head + n);
    return out;
  };
  auto decomp = [=](ByteSpan in, std::size_t limit) {
    const Framed f = read_frame(in, "zstd", limit);
    Bytes out(static_cast<std::size_t>(f.size));
    const std::size_t n = zd(out.data(), out.size(), f.payload.data(), f.payload.size());
    if (is_err(n) || n != f.size) detail::corrupt("zstd", 0, "decompression failed");
    return out;
  };
  return CodecAdapter{codec_id::zstd, "zstd", comp, decomp};
}

std::optional<CodecAdapter> lz4_adapter() {
  void* lib = open_library({"liblz4.so.1", "liblz4.so"});
  using BoundFn = int (*)(int);
  using CompFn = int (*)(const char*, char*, int, int);
  using DecompFn = int (*)(const char*, char*, int, int);
  auto bound = symbol<BoundFn>(lib, "LZ4_compressBound");
  auto lc = symbol<CompFn>(lib, "LZ4_compress_default");
  auto ld = symbol<DecompFn>(lib, "LZ4_decompress_safe");
  if (!bound || !lc || !ld) return std::nullopt;
  constexpr auto kMax = static_cast<std::size_t>(std::numeric_limits<int>::max() / 2);
  auto comp = [=](ByteSpan in, const CodecParams&) {
    if (in.size() > kMax) fail(ErrorCode::InvalidArgument, "lz4 input too large");
    const int cap = bound(static_cast<int>(in.size()));
    Bytes out = start_frame(in.size(), static_cast<std::size_t>(cap));
    const std::size_t head = out.size();
    out.resize(head + static_cast<std::size_t>(cap));
    const int n = in.empty() ? 0
                             : lc(reinterpret_cast<const char*>(in.data()), reinterpret_cast<char*>(out.data() + head),
                                  static_cast<int>(in.size()), cap);
    if (n < 0 || (n == 0 && !in.empty())) fail(ErrorCode::InvalidArgument, "lz4 compression failed");
    out.resize(head + static_cast<std::size_t>(n));
    return out;
  };
  auto decomp = [=](ByteSpan in, std::size_t limit) {
    const Framed f = read_frame(in, "lz4", std::min(limit, kMax));
    Bytes out(static_cast<std::size_t>(f.size));
    if (f.size == 0) {
      if (!f.payload.empty()) detail::corrupt("lz4", 0, "trailing bytes after empty stream");
      return out;
    }
    const int n = ld(reinterpret_cast<const char*>(f.payload.data()), reinterpret_cast<char*>(out.data()),
                     static_cast<int>(f.payload.size()), static_cast<int>(out.size()));
    if (n < 0 || static_cast<std::uint64_t>(n) != f.size) detail::corrupt("lz4", 0, "decompression failed");
    return out;
  };
  return CodecAdapter{codec_id::lz4, "lz4", comp, decomp};
}

std::optional<CodecAdapter> snappy_adapter() {
  void* lib = open_library({"libsnappy.so.1", "libsnappy.so"});
  using MaxFn = std::size_t (*)(std::size_t);
  using CompFn = int (*)(const char*, std::size_t, char*, std::size_t*);
  using DecompFn = int (*)(const char*, std::size_t, char*, std::size_t*);
  auto max_len = symbol<MaxFn>(lib, "snappy_max_compressed_length");
  auto sc = symbol<CompFn>(lib, "snappy_compress");
  auto sd = symbol<DecompFn>(lib, "snappy_uncompress");
  if (!max_len || !sc || !sd) return std::nullopt;
  auto comp = [=](ByteSpan in, const CodecParams&) {
    std::size_t cap = max_len(in.size());
    Bytes out = start_frame(in.size(), cap);
    const std::size_t head = out.size();
    out.resize(head + cap);
    if (sc(reinterpret_cast<const char*>(in.data()), in.size(), reinterpret_cast<char*>(out.data() + head), &cap) != 0) {
      fail(ErrorCode::InvalidArgument, "snappy compression failed");
    }
    out.resize(head + cap);
    return out;
  };
  auto decomp = [=](ByteSpan in, std::size_t limit) {
    const Framed f = read_frame(in, "snappy", limit);
    Bytes out(static_cast<std::size_t>(f.size));
    std::size_t len = out.size();
    if (sd(reinterpret_cast<const char*>(f.payload.data()), f.payload.size(), reinterpret_cast<char*>(out.data()), &len) != 0 ||
        len != f.size) {
      detail::corrupt("snappy", 0, "decompression failed");
    }
    return out;
  };
  return CodecAdapter{codec_id::snappy, "snappy", comp, decomp};
}

std::optional<CodecAdapter> bzip2_adapter() {
  void* lib = open_library({"libbz2.so.1", "libbz2.so.1.0", "libbz2.so"});
  using CompFn = int (*)(char*, unsigned*, char*, unsigned, int, int, int);
  using DecompFn = int (*)(char*, unsigned*, char*, unsigned, int, int);
  auto bc = symbol<CompFn>(lib, "BZ2_bzBuffToBuffCompress");
  auto bd = symbol<DecompFn>(lib, "BZ2_bzBuffToBuffDecompress");
  if (!bc || !bd) return std::nullopt;
  constexpr auto kMax = static_cast<std::size_t>(std::numeric_limits<unsigned>::max() / 2);
  auto comp = [=](ByteSpan in, const CodecParams& p) {
    if (in.size() > kMax) fail(ErrorCode::InvalidArgument, "bzip2 input too large");
    auto cap = static_cast<unsigned>(in.size() + in.size() / 100 + 600);
    Bytes out = start_frame(in.size(), cap);
    const std::size_t head = out.size();
    if (in.empty()) return out;
    out.resize(head + cap);
    const int level = p.level == 0 ? 9 : p.level;
    if (bc(reinterpret_cast<char*>(out.data() + head), &cap,
           const_cast<char*>(reinterpret_cast<const char*>(in.data())), static_cast<unsigned>(in.size()), level, 0, 0) != 0) {
      fail(ErrorCode::InvalidArgument, "bzip2 compression failed");
    }
    out.resize(head + cap);
    return out;
  };
  auto decomp = [=](ByteSpan in, std::size_t limit) {
    const Framed f = read_frame(in, "bzip2", std::min(limit, kMax));
    if (f.size == 0) {
      if (!f.payload.empty()) detail::corrupt("bzip2", 0, "payload after an empty frame");
      return Bytes{};
    }
    Bytes out(static_cast<std::size_t>(f.size));
    auto len = static_cast<unsigned>(f.size);
    Bytes payload(f.payload.begin(), f.payload.end());
    const int rc = bd(reinterpret_cast<char*>(out.data()), &len, reinterpret_cast<char*>(payload.data()),
                      static_cast<unsigned>(payload.size()), 0, 0);
    if (rc != 0 || len != f.size) detail::corrupt("bzip2", 0, "decompression failed");
    return out;
  };
  return CodecAdapter{codec_id::bzip2, "bzip2", comp, decomp};
}

}  // namespace

std::vector<CodecId> register_available_external(CodecRegistry& registry) {
  std::vector<CodecId> added;
  auto add = [&](std::optional<CodecAdapter> a) {
    if (a && !registry.contains(a->id)) added.push_back(registry.register_external(std::move(*a)));
  };
#if defined(TDT_HAVE_ZLIB)
  add(zlib_adapter());
#endif
  add(zstd_adapter());
  add(snappy_adapter());
  add(lz4_adapter());
  add(bzip2_adapter());
  return added;
}

}  // namespace tdt
