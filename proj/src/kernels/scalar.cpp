#include "kernels/variants.hpp"

namespace tdt::kernels {
namespace {

template <int W>
void transpose_fixed(const std::uint8_t* words, std::size_t count, std::uint8_t* planes) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* w = words + i * W;
    for (int p = 0; p < W; ++p) planes[static_cast<std::size_t>(p) * count + i] = w[p];
  }
}

template <int W>
void untranspose_fixed(const std::uint8_t* planes, std::size_t count, std::uint8_t* words) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint8_t* w = words + i * W;
    for (int p = 0; p < W; ++p) w[p] = planes[static_cast<std::size_t>(p) * count + i];
  }
}

}  // namespace

void transpose_scalar(const std::uint8_t* words, std::size_t count, int width, std::uint8_t* planes) {
  switch (width) {
    case 1: transpose_fixed<1>(words, count, planes); return;
    case 2: transpose_fixed<2>(words, count, planes); return;
    case 4: transpose_fixed<4>(words, count, planes); return;
    case 8: transpose_fixed<8>(words, count, planes); return;
    default:
      for (std::size_t i = 0; i < count; ++i)
        for (int p = 0; p < width; ++p)
          planes[static_cast<std::size_t>(p) * count + i] = words[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(p)];
  }
}

void untranspose_scalar(const std::uint8_t* planes, std::size_t count, int width, std::uint8_t* words) {
  switch (width) {
    case 1: untranspose_fixed<1>(planes, count, words); return;
    case 2: untranspose_fixed<2>(planes, count, words); return;
    case 4: untranspose_fixed<4>(planes, count, words); return;
    case 8: untranspose_fixed<8>(planes, count, words); return;
    default:
      for (std::size_t i = 0; i < count; ++i)
        for (int p = 0; p < width; ++p)
          words[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(p)] = planes[static_cast<std::size_t>(p) * count + i];
  }
}

}  // namespace tdt::kernels
