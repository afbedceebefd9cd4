#pragma once

// Byte- and bit-level readers/writers shared by the in-house codecs. Readers
// never touch memory past the input and report overruns as CorruptStream with
// the byte offset at which decoding stopped.

#include <cstdint>
#include <string>

#include "tdt/typed.hpp"

namespace tdt::detail {

[[noreturn]] inline void corrupt(const char* codec, std::size_t offset, const std::string& what) {
  fail(ErrorCode::CorruptStream, std::string(codec) + " stream, byte offset " + std::to_string(offset) + ": " + what);
}

inline void put_varint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

class ByteReader {
 public:
  ByteReader(ByteSpan in, const char* codec) : in_(in), codec_(codec) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  bool done() const noexcept { return pos_ == in_.size(); }
  ByteSpan rest() const noexcept { return in_.subspan(pos_); }

  std::uint8_t u8() {
    if (pos_ >= in_.size()) corrupt(codec_, pos_, "unexpected end of stream");
    return in_[pos_++];
  }

  std::uint16_t u16le() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if (!(b & 0x80)) return v;
    }
    corrupt(codec_, pos_, "varint too long");
  }

  void skip(std::size_t n) {
    if (n > remaining()) corrupt(codec_, pos_, "unexpected end of stream");
    pos_ += n;
  }

  [[noreturn]] void fail_here(const std::string& what) const { corrupt(codec_, pos_, what); }

 private:
  ByteSpan in_;
  std::size_t pos_ = 0;
  const char* codec_;
};

/// MSB-first bit packer.
class BitWriter {
 public:
  explicit BitWriter(Bytes& out) : out_(out) {}

  void put(std::uint64_t value, int bits) {
    // Split wide writes so the accumulator never overflows.
    if (bits > 32) {
      put(value >> 32, bits - 32);
      bits = 32;
      value &= 0xFFFFFFFFull;
    }
    acc_ = (acc_ << bits) | (bits == 64 ? value : (value & ((std::uint64_t{1} << bits) - 1)));
    count_ += bits;
    while (count_ >= 8) {
      count_ -= 8;
      out_.push_back(static_cast<std::uint8_t>(acc_ >> count_));
    }
    acc_ &= (std::uint64_t{1} << count_) - 1;
    total_ += static_cast<std::uint64_t>(bits);
  }

  void bit(bool b) { put(b ? 1u : 0u, 1); }

  /// Pads the last byte with zero bits.
  void flush() {
    if (count_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - count_)));
      count_ = 0;
      acc_ = 0;
    }
  }

  std::uint64_t bits_written() const noexcept { return total_; }

 private:
  Bytes& out_;
  std::uint64_t acc_ = 0;
  int count_ = 0;
  std::uint64_t total_ = 0;
};

/// MSB-first bit reader over [begin, end) of a byte span.
class BitReader {
 public:
  BitReader(ByteSpan in, const char* codec) : in_(in), codec_(codec) {}

  std::uint64_t bits_total() const noexcept { return static_cast<std::uint64_t>(in_.size()) * 8; }
  std::uint64_t bits_used() const noexcept { return used_; }

  /// Next `bits` (<= 57) bits without consuming them; bits past the end read as zero.
  std::uint64_t peek(int bits) {
    refill();
    return (acc_ >> (64 - bits));
  }

  void consume(int bits) {
    if (used_ + static_cast<std::uint64_t>(bits) > bits_total()) {
      corrupt(codec_, static_cast<std::size_t>(used_ / 8), "bit stream exhausted");
    }
    acc_ <<= bits;
    have_ -= bits;
    used_ += static_cast<std::uint64_t>(bits);
  }

  std::uint64_t get(int bits) {
    if (bits == 0) return 0;
    if (bits > 32) {
      const std::uint64_t hi = get(bits - 32);
      return (hi << 32) | get(32);
    }
    const std::uint64_t v = peek(bits);
    consume(bits);
    return v;
  }

  bool bit() { return get(1) != 0; }

  /// True when only zero padding (< 8 bits) remains.
  bool at_padding() {
    const std::uint64_t left = bits_total() - used_;
    if (left >= 8) return false;
    return left == 0 || peek(static_cast<int>(left)) == 0;
  }

 private:
  void refill() {
    while (have_ <= 56) {
      const std::uint8_t b = next_ < in_.size() ? in_[next_] : 0;
      ++next_;
      acc_ |= static_cast<std::uint64_t>(b) << (56 - have_);
      have_ += 8;
    }
  }

  ByteSpan in_;
  const char* codec_;
  std::uint64_t acc_ = 0;  // left-aligned
  int have_ = 0;
  std::size_t next_ = 0;
  std::uint64_t used_ = 0;
};

}  // namespace tdt::detail
