#pragma once

#include <cstddef>
#include <cstdint>

namespace tdt::kernels {

// Any width >= 1 is accepted; the SIMD variants fall back to scalar for widths
// they do not specialize and for the tail past the last full vector.
void transpose_scalar(const std::uint8_t* words, std::size_t count, int width, std::uint8_t* planes);
void untranspose_scalar(const std::uint8_t* planes, std::size_t count, int width, std::uint8_t* words);

#if defined(TDT_HAVE_AVX2_KERNELS)
void transpose_avx2(const std::uint8_t* words, std::size_t count, int width, std::uint8_t* planes);
void untranspose_avx2(const std::uint8_t* planes, std::size_t count, int width, std::uint8_t* words);
#endif

}  // namespace tdt::kernels
