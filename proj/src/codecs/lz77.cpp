// Sliding-window LZ77 with hash-chain match search.
//
// Stream: varint(raw size) | u8 min_match | token groups. Each group starts
// with a flag byte whose bits (LSB first) mark the next eight tokens as
// literal run (0) or match (1). A literal run is u8(count - 1) followed by
// 1..256 raw bytes; a match is u16le(offset - 1) followed by a length code L
// (length = min_match + L, and L = 255 is followed by varint(L') giving
// length = min_match + 255 + L'). The encoder only emits matches of at least
// four bytes, so a match never costs more than the literals it replaces.

#include <algorithm>
#include <bit>
#include <cstring>

#include "codecs/stream_io.hpp"
#include "tdt/codec.hpp"

namespace tdt::lz77 {
namespace {

constexpr int kMaxHashBits = 16;
constexpr int kMaxChain = 48;

inline std::uint32_t load32(const std::uint8_t* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

inline std::uint32_t hash_at(const std::uint8_t* p, int hash_len, int hash_bits) {
  std::uint32_t v = hash_len >= 4 ? load32(p) : (p[0] | (p[1] << 8) | (p[2] << 16));
  return (v * 2654435761u) >> (32 - hash_bits);
}

inline std::size_t match_length(const std::uint8_t* a, const std::uint8_t* b, std::size_t limit) {
  std::size_t n = 0;
  while (n + 8 <= limit) {
    std::uint64_t x, y;
    std::memcpy(&x, a + n, 8);
    std::memcpy(&y, b + n, 8);
    if (x != y) {
      if constexpr (std::endian::native == std::endian::little) {
        return n + static_cast<std::size_t>(std::countr_zero(x ^ y) / 8);
      } else {
        return n + static_cast<std::size_t>(std::countl_zero(x ^ y) / 8);
      }
    }
    n += 8;
  }
  while (n < limit && a[n] == b[n]) ++n;
  return n;
}

class Matcher {
 public:
  // Tables shrink with the input so tiny streams stay cheap; a ring of
  // min(window, bit_ceil(n)) slots never wraps onto a live position.
  Matcher(ByteSpan in, std::size_t window, int min_match)
      : in_(in), window_(window), ring_(std::min(window, std::bit_ceil(std::max<std::size_t>(in.size(), 1)))),
        mask_(ring_ - 1), hash_len_(std::min(min_match, 4)),
        hash_bits_(std::clamp(static_cast<int>(std::bit_width(in.size())), 8, kMaxHashBits)),
        head_(std::size_t{1} << hash_bits_, -1), prev_(ring_, -1) {}

  void insert(std::size_t pos) {
    if (pos + static_cast<std::size_t>(hash_len_) > in_.size()) return;
    const std::uint32_t h = hash_at(in_.data() + pos, hash_len_, hash_bits_);
    prev_[pos & mask_] = head_[h];
    head_[h] = static_cast<std::int64_t>(pos);
  }

  struct Match {
    std::size_t length = 0;
    std::size_t offset = 0;
  };

  Match longest(std::size_t pos) const {
    Match best;
    if (pos + static_cast<std::size_t>(hash_len_) > in_.size()) return best;
    const std::size_t limit = in_.size() - pos;
    const std::uint8_t* cur = in_.data() + pos;
    std::int64_t cand = head_[hash_at(cur, hash_len_, hash_bits_)];
    for (int chain = 0; cand >= 0 && chain < kMaxChain; ++chain) {
      const auto c = static_cast<std::size_t>(cand);
      if (c >= pos || pos - c > window_) break;
      const std::uint8_t* ref = in_.data() + c;
      if (ref[best.length] == cur[best.length] || best.length == 0) {
        const std::size_t len = match_length(ref, cur, limit);
        if (len > best.length) {
          best = {len, pos - c};
          if (len == limit) break;
        }
      }
      const std::int64_t next = prev_[c & mask_];
      // Ring slots are reused once a position leaves the window.
      if (next >= cand) break;
      cand = next;
    }
    return best;
  }

 private:
  ByteSpan in_;
  std::size_t window_;
  std::size_t ring_;
  std::size_t mask_;
  int hash_len_;
  int hash_bits_;
  std::vector<std::int64_t> head_;
  std::vector<std::int64_t> prev_;
};

class TokenWriter {
 public:
  TokenWriter(Bytes& out, ByteSpan in) : out_(out), in_(in) {}

  void literal(std::size_t pos) {
    if (run_len_ == 0) run_start_ = pos;
    if (++run_len_ == 256) flush_literals();
  }

  void match(std::size_t offset, std::size_t length, int min_match) {
    flush_literals();
    next_slot();
    out_[flag_pos_] |= static_cast<std::uint8_t>(1u << (slot_ - 1));
    const auto off = static_cast<std::uint16_t>(offset - 1);
    out_.push_back(static_cast<std::uint8_t>(off & 0xFF));
    out_.push_back(static_cast<std::uint8_t>(off >> 8));
    const std::size_t code = length - static_cast<std::size_t>(min_match);
    if (code < 255) {
      out_.push_back(static_cast<std::uint8_t>(code));
    } else {
      out_.push_back(255);
      detail::put_varint(out_, code - 255);
    }
  }

  void flush_literals() {
    if (run_len_ == 0) return;
    next_slot();
    out_.push_back(static_cast<std::uint8_t>(run_len_ - 1));
    out_.insert(out_.end(), in_.begin() + static_cast<std::ptrdiff_t>(run_start_),
                in_.begin() + static_cast<std::ptrdiff_t>(run_start_ + run_len_));
    run_len_ = 0;
  }

 private:
  void next_slot() {
    if (slot_ == 8) {
      flag_pos_ = out_.size();
      out_.push_back(0);
      slot_ = 0;
    }
    ++slot_;
  }

  Bytes& out_;
  ByteSpan in_;
  std::size_t flag_pos_ = 0;
  int slot_ = 8;
  std::size_t run_start_ = 0;
  std::size_t run_len_ = 0;
};

}  // namespace

std::size_t max_compressed_size(std::size_t n) {
  // Header: 10-byte varint + min_match. A match of L >= 4 bytes costs at most
  // L - 1 bytes and can split a literal run, adding one run byte; so every
  // four input bytes add at most two flag bits. Runs of 256 add one count
  // byte and one flag bit.
  return 11 + n + (n + 15) / 16 + (n + 255) / 256 * 2 + 2;
}

Bytes compress(ByteSpan input, const CodecParams& params) {
  validate(params);
  const std::size_t window = params.lz77_window;
  const int min_match = params.lz77_min_match;

  Bytes out;
  out.reserve(input.size() / 2 + 16);
  detail::put_varint(out, input.size());
  out.push_back(static_cast<std::uint8_t>(min_match));
  if (input.empty()) return out;

  Matcher matcher(input, window, min_match);
  TokenWriter tokens(out, input);
  const std::size_t accept = static_cast<std::size_t>(std::max(min_match, 4));
  std::size_t pos = 0;
  while (pos < input.size()) {
    auto m = matcher.longest(pos);
    if (m.length >= accept && params.lz77_lazy && pos + 1 < input.size()) {
      matcher.insert(pos);
      const auto next = matcher.longest(pos + 1);
      if (next.length > m.length) {
        tokens.literal(pos);
        ++pos;
        m = next;
      } else {
        // pos is already in the chains; insert the remainder of the match below.
        tokens.match(m.offset, m.length, min_match);
        for (std::size_t p = pos + 1; p < pos + m.length; ++p) matcher.insert(p);
        pos += m.length;
        continue;
      }
    }
    if (m.length >= accept) {
      tokens.match(m.offset, m.length, min_match);
      for (std::size_t p = pos; p < pos + m.length; ++p) matcher.insert(p);
      pos += m.length;
    } else {
      tokens.literal(pos);
      matcher.insert(pos);
      ++pos;
    }
  }
  tokens.flush_literals();
  return out;
}

Bytes decompress(ByteSpan input, std::size_t size_limit) {
  detail::ByteReader in(input, "lz77");
  const std::uint64_t size = in.varint();
  if (size > size_limit) in.fail_here("declared size " + std::to_string(size) + " exceeds limit");
  const std::size_t min_match = in.u8();
  if (min_match < 3) in.fail_here("invalid min_match");

  Bytes out;
  // A match token is at least three bytes, so the input bounds the output growth rate.
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(size, input.size() * 64 + 64)));
  while (out.size() < size) {
    const std::uint8_t flags = in.u8();
    for (int slot = 0; slot < 8 && out.size() < size; ++slot) {
      if (!(flags & (1u << slot))) {
        const std::size_t run = static_cast<std::size_t>(in.u8()) + 1;
        if (run > size - out.size()) in.fail_here("literal run past declared size");
        const ByteSpan lit = in.rest().first(std::min(run, in.remaining()));
        in.skip(run);
        out.insert(out.end(), lit.begin(), lit.end());
        continue;
      }
      const std::size_t offset = static_cast<std::size_t>(in.u16le()) + 1;
      std::uint64_t length = in.u8();
      if (length == 255) length += in.varint();
      length += min_match;
      if (offset > out.size()) in.fail_here("match offset beyond start of output");
      if (length > size - out.size()) in.fail_here("match runs past declared size");
      const std::size_t start = out.size() - offset;
      const auto len = static_cast<std::size_t>(length);
      out.resize(out.size() + len);
      std::uint8_t* dst = out.data() + start + offset;
      const std::uint8_t* src = out.data() + start;
      if (offset >= len) {
        std::memcpy(dst, src, len);
      } else {
        for (std::size_t i = 0; i < len; ++i) dst[i] = src[i];
      }
    }
  }
  if (!in.done()) in.fail_here("trailing bytes after final token");
  return out;
}

}  // namespace tdt::lz77
