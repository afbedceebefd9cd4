#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace tdt::kernels {

/// Byte-plane transpose: `planes[p * count + i] = words[i * width + p]`.
using TransposeFn = void (*)(const std::uint8_t* words, std::size_t count, int width, std::uint8_t* planes);
/// Inverse of TransposeFn.
using UntransposeFn = void (*)(const std::uint8_t* planes, std::size_t count, int width, std::uint8_t* words);

struct KernelSet {
  std::string_view name;
  TransposeFn transpose;
  UntransposeFn untranspose;
};

/// Portable reference implementation; defines the expected output of every variant.
const KernelSet& scalar();

/// AVX2 variant, or nullptr when it was not built or the CPU lacks AVX2.
const KernelSet* avx2();

/// Best variant for this machine. `TDT_KERNELS=scalar` in the environment pins
/// the scalar path.
const KernelSet& active();

}  // namespace tdt::kernels
