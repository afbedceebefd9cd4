// Regenerates the golden vectors in this directory:
//   tdt_golden_gen <output-dir>
// Only rerun after an intentional format change.

#include <cstdio>
#include <fstream>
#include <string>

#include "tdt/codec.hpp"
#include "tdt/container.hpp"
#include "tdt/pipeline.hpp"

using namespace tdt;

namespace {

std::string hex(ByteSpan b) {
  if (b.empty()) return "-";
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto x : b) {
    s += digits[x >> 4];
    s += digits[x & 15];
  }
  return s;
}

Bytes text(const std::string& s) { return Bytes(s.begin(), s.end()); }

Bytes repeat(const std::string& s, int times) {
  Bytes out;
  for (int i = 0; i < times; ++i) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// Small float32 series with a slowly varying exponent byte and a noisy low byte.
Bytes series(std::size_t count) {
  Bytes out;
  std::uint32_t state = 12345;
  for (std::size_t i = 0; i < count; ++i) {
    state = state * 1103515245u + 12345u;
    const std::uint32_t bits = 0x41200000u + static_cast<std::uint32_t>(i) * 0x1000u + ((state >> 16) & 0xFF);
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
  return out;
}

void write_file(const std::string& path, ByteSpan bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: tdt_golden_gen <output-dir>\n");
    return 1;
  }
  const std::string dir = argv[1];

  struct Case {
    const char* name;
    CodecId codec;
    CodecParams params;
    Bytes input;
  };
  CodecParams lazy;
  lazy.lz77_lazy = true;
  CodecParams small_window;
  small_window.lz77_window = 256;
  small_window.lz77_min_match = 3;
  CodecParams xor8;
  xor8.xor_word_width = 8;
  CodecParams xor2;
  xor2.xor_word_width = 2;
  const Case cases[] = {
      {"store_empty", codec_id::store, {}, {}},
      {"store_hello", codec_id::store, {}, text("hello")},
      {"lz77_empty", codec_id::lz77, {}, {}},
      {"lz77_abc", codec_id::lz77, {}, repeat("abc", 100)},
      {"lz77_mixed", codec_id::lz77, {}, text("abracadabra, abracadabra! cadabra abra")},
      {"lz77_lazy", codec_id::lz77, lazy, text("xabcdyabcdeabcdefabcdefg abcdefg")},
      {"lz77_window256", codec_id::lz77, small_window, repeat("0123456789", 40)},
      {"huffman_empty", codec_id::huffman, {}, {}},
      {"huffman_abra", codec_id::huffman, {}, text("abracadabra")},
      {"huffman_single", codec_id::huffman, {}, Bytes(64, 0x2A)},
      {"huffman_series", codec_id::huffman, {}, series(64)},
      {"xor_constant", codec_id::xor_delta, {}, repeat("\x12\x34\x56\x78", 16)},
      {"xor_series", codec_id::xor_delta, {}, series(32)},
      {"xor_width8", codec_id::xor_delta, xor8, series(32)},
      {"xor_width2", codec_id::xor_delta, xor2, text("aabbaabbccddccdd")},
  };

  std::ofstream out(dir + "/codecs.txt");
  out << "# name codec lz77_window lz77_min_match lz77_lazy xor_word_width input_hex compressed_hex\n";
  for (const auto& c : cases) {
    const Bytes z = compress(c.codec, c.params, c.input);
    out << c.name << ' ' << CodecRegistry::global().name_of(c.codec) << ' ' << c.params.lz77_window << ' '
        << c.params.lz77_min_match << ' ' << (c.params.lz77_lazy ? 1 : 0) << ' ' << c.params.xor_word_width << ' '
        << hex(c.input) << ' ' << hex(z) << '\n';
  }

  // Container: 3 blocks of 32 values (the last one short), a 3-cluster plan and a 2-byte tail.
  Bytes raw = series(80);
  const Bytes tail = {0xEE, 0xFF};
  PipelineConfig cfg;
  cfg.block_size = 128;
  cfg.codec = codec_id::lz77;
  const ClusteringPlan plan(FloatWidth(4), {{1, 2}, {3}, {4}});
  const Container c = compress_pipeline(view(raw, FloatWidth(4)), cfg, plan, tail);
  raw.insert(raw.end(), tail.begin(), tail.end());
  write_file(dir + "/series_f32.raw", raw);
  write_file(dir + "/series_f32.tdt", serialize(c));

  const Container empty = compress_pipeline(view(Bytes{}, FloatWidth(8)), cfg, ClusteringPlan::singletons(FloatWidth(8)));
  write_file(dir + "/empty_f64.tdt", serialize(empty));
  return 0;
}
