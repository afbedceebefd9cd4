// Gorilla-style XOR coding of consecutive words.
//
// Stream: varint(raw size) | u8 word width | MSB-first bits, zero padded.
// The first word is written raw. Every later word is XORed with its
// predecessor:
//   0                         XOR is zero
//   1 0 <payload>             meaningful bits fit the previous window
//   1 1 <lead:6> <len-1:6> <payload>
// Words are read as little-endian integers of `width` bytes.

#include <bit>

#include "codecs/stream_io.hpp"
#include "tdt/codec.hpp"

namespace tdt::xor_delta {
namespace {

std::uint64_t load_word(const std::uint8_t* p, int width) {
  std::uint64_t v = 0;
  for (int i = width - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_word(std::uint8_t* p, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) {
    p[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
}

}  // namespace

Bytes compress(ByteSpan input, int width) {
  if (width < 1 || width > 8) fail(ErrorCode::InvalidArgument, "xor word width must be 1..8 bytes");
  if (input.size() % static_cast<std::size_t>(width) != 0) {
    fail(ErrorCode::WidthMismatch, std::to_string(input.size()) + " bytes is not a multiple of the xor word width " +
                                       std::to_string(width));
  }
  Bytes out;
  detail::put_varint(out, input.size());
  out.push_back(static_cast<std::uint8_t>(width));
  if (input.empty()) return out;

  const int bits = 8 * width;
  const std::size_t words = input.size() / static_cast<std::size_t>(width);
  detail::BitWriter w(out);
  std::uint64_t prev = load_word(input.data(), width);
  w.put(prev, bits);
  int win_lead = -1, win_trail = 0, win_len = 0;
  for (std::size_t i = 1; i < words; ++i) {
    const std::uint64_t cur = load_word(input.data() + i * static_cast<std::size_t>(width), width);
    const std::uint64_t x = cur ^ prev;
    prev = cur;
    if (x == 0) {
      w.bit(false);
      continue;
    }
    w.bit(true);
    const int lead = std::countl_zero(x) - (64 - bits);
    const int trail = std::countr_zero(x);
    if (win_lead >= 0 && lead >= win_lead && trail >= win_trail) {
      w.bit(false);
      w.put(x >> win_trail, win_len);
      continue;
    }
    const int len = bits - lead - trail;
    w.bit(true);
    w.put(static_cast<std::uint64_t>(lead), 6);
    w.put(static_cast<std::uint64_t>(len - 1), 6);
    w.put(x >> trail, len);
    win_lead = lead;
    win_trail = trail;
    win_len = len;
  }
  w.flush();
  return out;
}

Bytes decompress(ByteSpan input, std::size_t size_limit) {
  detail::ByteReader in(input, "xor_delta");
  const std::uint64_t size = in.varint();
  if (size > size_limit) in.fail_here("declared size " + std::to_string(size) + " exceeds limit");
  const int width = in.u8();
  if (width < 1 || width > 8) in.fail_here("invalid word width");
  if (size % static_cast<std::uint64_t>(width) != 0) in.fail_here("size is not a multiple of the word width");
  if (size == 0) {
    if (!in.done()) in.fail_here("trailing bytes after empty stream");
    return {};
  }
  const std::uint64_t words = size / static_cast<std::uint64_t>(width);
  // Every word after the first costs at least one bit.
  if (words - 1 + static_cast<std::uint64_t>(8 * width) > static_cast<std::uint64_t>(in.remaining()) * 8) {
    in.fail_here("payload too short for declared size");
  }

  const std::size_t payload_start = in.offset();
  const int bits = 8 * width;
  Bytes out(static_cast<std::size_t>(size));
  detail::BitReader r(in.rest(), "xor_delta");
  std::uint64_t prev = r.get(bits);
  store_word(out.data(), prev, width);
  int win_trail = 0, win_len = 0;
  bool have_window = false;
  for (std::uint64_t i = 1; i < words; ++i) {
    std::uint64_t x = 0;
    if (r.bit()) {
      if (r.bit()) {
        const int lead = static_cast<int>(r.get(6));
        const int len = static_cast<int>(r.get(6)) + 1;
        if (lead + len > bits) {
          detail::corrupt("xor_delta", payload_start + static_cast<std::size_t>(r.bits_used() / 8), "window exceeds word width");
        }
        win_trail = bits - lead - len;
        win_len = len;
        have_window = true;
      } else if (!have_window) {
        detail::corrupt("xor_delta", payload_start + static_cast<std::size_t>(r.bits_used() / 8), "window reuse before any window");
      }
      x = r.get(win_len) << win_trail;
    }
    prev ^= x;
    store_word(out.data() + i * static_cast<std::uint64_t>(width), prev, width);
  }
  if (!r.at_padding()) {
    detail::corrupt("xor_delta", payload_start + static_cast<std::size_t>(r.bits_used() / 8), "trailing data after payload");
  }
  return out;
}

}  // namespace tdt::xor_delta
