// AVX2 byte-plane transpose for 2-, 4- and 8-byte words. Each kernel handles
// 32 words per iteration and finishes the tail with the scalar loop.

#include <immintrin.h>

#include <array>

#include "kernels/variants.hpp"

namespace tdt::kernels {
namespace {

using Mask = std::array<std::uint8_t, 32>;

// Same 16-byte pattern in both 128-bit lanes.
constexpr Mask lane_mask(const std::array<std::uint8_t, 16>& m) {
  Mask out{};
  for (int i = 0; i < 16; ++i) {
    out[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i + 16)] = m[static_cast<std::size_t>(i)];
  }
  return out;
}

constexpr Mask inverse(const Mask& m) {
  Mask out{};
  for (int lane = 0; lane < 2; ++lane)
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(lane * 16 + m[static_cast<std::size_t>(lane * 16 + i)])] = static_cast<std::uint8_t>(i);
  return out;
}

constexpr Mask kSplit2 = lane_mask({0, 2, 4, 6, 8, 10, 12, 14, 1, 3, 5, 7, 9, 11, 13, 15});
constexpr Mask kSplit4 = lane_mask({0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15});
constexpr Mask kSplit8 = lane_mask({0, 8, 1, 9, 2, 10, 3, 11, 4, 12, 5, 13, 6, 14, 7, 15});
constexpr Mask kPair8 = lane_mask({0, 1, 8, 9, 2, 3, 10, 11, 4, 5, 12, 13, 6, 7, 14, 15});
constexpr Mask kJoin2 = inverse(kSplit2);
constexpr Mask kJoin4 = inverse(kSplit4);
constexpr Mask kJoin8 = inverse(kSplit8);
constexpr Mask kUnpair8 = inverse(kPair8);

inline __m256i load_mask(const Mask& m) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m.data())); }
inline __m256i load(const std::uint8_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint8_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void transpose_tail(const std::uint8_t* words, std::size_t from, std::size_t count, int width, std::uint8_t* planes) {
  const auto w = static_cast<std::size_t>(width);
  for (std::size_t i = from; i < count; ++i)
    for (std::size_t p = 0; p < w; ++p) planes[p * count + i] = words[i * w + p];
}

void untranspose_tail(const std::uint8_t* planes, std::size_t from, std::size_t count, int width, std::uint8_t* words) {
  const auto w = static_cast<std::size_t>(width);
  for (std::size_t i = from; i < count; ++i)
    for (std::size_t p = 0; p < w; ++p) words[i * w + p] = planes[p * count + i];
}

// In-register 8x8 transpose of 32-bit elements; it is its own inverse.
inline void transpose8x32(__m256i r[8]) {
  __m256i t[8], u[8];
  for (int i = 0; i < 4; ++i) {
    t[2 * i] = _mm256_unpacklo_epi32(r[2 * i], r[2 * i + 1]);
    t[2 * i + 1] = _mm256_unpackhi_epi32(r[2 * i], r[2 * i + 1]);
  }
  for (int h = 0; h < 2; ++h) {
    const int b = 4 * h;
    u[b + 0] = _mm256_unpacklo_epi64(t[b + 0], t[b + 2]);
    u[b + 1] = _mm256_unpackhi_epi64(t[b + 0], t[b + 2]);
    u[b + 2] = _mm256_unpacklo_epi64(t[b + 1], t[b + 3]);
    u[b + 3] = _mm256_unpackhi_epi64(t[b + 1], t[b + 3]);
  }
  for (int i = 0; i < 4; ++i) {
    r[i] = _mm256_permute2x128_si256(u[i], u[i + 4], 0x20);
    r[i + 4] = _mm256_permute2x128_si256(u[i], u[i + 4], 0x31);
  }
}

// 4x4 transpose of 64-bit elements; its own inverse.
inline void transpose4x64(__m256i r[4]) {
  const __m256i t0 = _mm256_unpacklo_epi64(r[0], r[1]);
  const __m256i t1 = _mm256_unpackhi_epi64(r[0], r[1]);
  const __m256i t2 = _mm256_unpacklo_epi64(r[2], r[3]);
  const __m256i t3 = _mm256_unpackhi_epi64(r[2], r[3]);
  r[0] = _mm256_permute2x128_si256(t0, t2, 0x20);
  r[1] = _mm256_permute2x128_si256(t1, t3, 0x20);
  r[2] = _mm256_permute2x128_si256(t0, t2, 0x31);
  r[3] = _mm256_permute2x128_si256(t1, t3, 0x31);
}

void transpose2(const std::uint8_t* words, std::size_t count, std::uint8_t* planes) {
  const __m256i split = load_mask(kSplit2);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    __m256i a0 = _mm256_shuffle_epi8(load(words + 2 * i), split);
    __m256i a1 = _mm256_shuffle_epi8(load(words + 2 * i + 32), split);
    a0 = _mm256_permute4x64_epi64(a0, _MM_SHUFFLE(3, 1, 2, 0));
    a1 = _mm256_permute4x64_epi64(a1, _MM_SHUFFLE(3, 1, 2, 0));
    store(planes + i, _mm256_permute2x128_si256(a0, a1, 0x20));
    store(planes + count + i, _mm256_permute2x128_si256(a0, a1, 0x31));
  }
  transpose_tail(words, i, count, 2, planes);
}

void untranspose2(const std::uint8_t* planes, std::size_t count, std::uint8_t* words) {
  const __m256i join = load_mask(kJoin2);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    const __m256i o0 = load(planes + i);
    const __m256i o1 = load(planes + count + i);
    __m256i a0 = _mm256_permute2x128_si256(o0, o1, 0x20);
    __m256i a1 = _mm256_permute2x128_si256(o0, o1, 0x31);
    a0 = _mm256_permute4x64_epi64(a0, _MM_SHUFFLE(3, 1, 2, 0));
    a1 = _mm256_permute4x64_epi64(a1, _MM_SHUFFLE(3, 1, 2, 0));
    store(words + 2 * i, _mm256_shuffle_epi8(a0, join));
    store(words + 2 * i + 32, _mm256_shuffle_epi8(a1, join));
  }
  untranspose_tail(planes, i, count, 2, words);
}

void transpose4(const std::uint8_t* words, std::size_t count, std::uint8_t* planes) {
  const __m256i split = load_mask(kSplit4);
  const __m256i spread = _mm256_setr_epi32(0, 4, 1, 5, 2, 6, 3, 7);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    __m256i r[4];
    for (int j = 0; j < 4; ++j) {
      r[j] = _mm256_shuffle_epi8(load(words + 4 * i + 32 * static_cast<std::size_t>(j)), split);
      r[j] = _mm256_permutevar8x32_epi32(r[j], spread);
    }
    transpose4x64(r);
    for (int p = 0; p < 4; ++p) store(planes + static_cast<std::size_t>(p) * count + i, r[p]);
  }
  transpose_tail(words, i, count, 4, planes);
}

void untranspose4(const std::uint8_t* planes, std::size_t count, std::uint8_t* words) {
  const __m256i join = load_mask(kJoin4);
  const __m256i gather = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    __m256i r[4];
    for (int p = 0; p < 4; ++p) r[p] = load(planes + static_cast<std::size_t>(p) * count + i);
    transpose4x64(r);
    for (int j = 0; j < 4; ++j) {
      r[j] = _mm256_permutevar8x32_epi32(r[j], gather);
      store(words + 4 * i + 32 * static_cast<std::size_t>(j), _mm256_shuffle_epi8(r[j], join));
    }
  }
  untranspose_tail(planes, i, count, 4, words);
}

void transpose8(const std::uint8_t* words, std::size_t count, std::uint8_t* planes) {
  const __m256i split = load_mask(kSplit8);
  const __m256i pair = load_mask(kPair8);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    __m256i r[8];
    for (int j = 0; j < 8; ++j) {
      __m256i v = _mm256_shuffle_epi8(load(words + 8 * i + 32 * static_cast<std::size_t>(j)), split);
      v = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(3, 1, 2, 0));
      r[j] = _mm256_shuffle_epi8(v, pair);
    }
    transpose8x32(r);
    for (int p = 0; p < 8; ++p) store(planes + static_cast<std::size_t>(p) * count + i, r[p]);
  }
  transpose_tail(words, i, count, 8, planes);
}

void untranspose8(const std::uint8_t* planes, std::size_t count, std::uint8_t* words) {
  const __m256i join = load_mask(kJoin8);
  const __m256i unpair = load_mask(kUnpair8);
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    __m256i r[8];
    for (int p = 0; p < 8; ++p) r[p] = load(planes + static_cast<std::size_t>(p) * count + i);
    transpose8x32(r);
    for (int j = 0; j < 8; ++j) {
      __m256i v = _mm256_shuffle_epi8(r[j], unpair);
      v = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(3, 1, 2, 0));
      store(words + 8 * i + 32 * static_cast<std::size_t>(j), _mm256_shuffle_epi8(v, join));
    }
  }
  untranspose_tail(planes, i, count, 8, words);
}

}  // namespace

void transpose_avx2(const std::uint8_t* words, std::size_t count, int width, std::uint8_t* planes) {
  switch (width) {
    case 2: transpose2(words, count, planes); return;
    case 4: transpose4(words, count, planes); return;
    case 8: transpose8(words, count, planes); return;
    default: transpose_scalar(words, count, width, planes);
  }
}

void untranspose_avx2(const std::uint8_t* planes, std::size_t count, int width, std::uint8_t* words) {
  switch (width) {
    case 2: untranspose2(planes, count, words); return;
    case 4: untranspose4(planes, count, words); return;
    case 8: untranspose8(planes, count, words); return;
    default: untranspose_scalar(planes, count, width, words);
  }
}

}  // namespace tdt::kernels
