#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdt/kernels.hpp"

using namespace tdt;

namespace {

std::vector<const kernels::KernelSet*> variants() {
  std::vector<const kernels::KernelSet*> v{&kernels::scalar()};
  if (const auto* a = kernels::avx2()) v.push_back(a);
  return v;
}

}  // namespace

TEST(Kernels, ScalarMatchesDefinition) {
  const auto& k = kernels::scalar();
  for (int w : {1, 2, 3, 4, 8}) {
    const std::size_t count = 29;
    const auto words = oracle::random_bytes(count * static_cast<std::size_t>(w), static_cast<std::uint64_t>(w));
    std::vector<std::uint8_t> planes(words.size()), back(words.size());
    k.transpose(words.data(), count, w, planes.data());
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t p = 0; p < static_cast<std::size_t>(w); ++p)
        ASSERT_EQ(planes[p * count + i], words[i * static_cast<std::size_t>(w) + p]);
    k.untranspose(planes.data(), count, w, back.data());
    EXPECT_EQ(back, words);
  }
}

TEST(Kernels, VariantsAgreeWithScalar) {
  std::mt19937_64 rng(12);
  const auto& ref = kernels::scalar();
  for (const auto* k : variants()) {
    for (int w : {2, 3, 4, 5, 8}) {
      // Counts straddle the vector widths so every tail path runs.
      for (std::size_t count : {0u, 1u, 7u, 15u, 16u, 31u, 32u, 33u, 63u, 64u, 65u, 1000u, 4099u}) {
        const auto words = oracle::random_bytes(count * static_cast<std::size_t>(w), rng());
        std::vector<std::uint8_t> a(words.size() + 1, 0xEE), b(words.size() + 1, 0xEE);
        ref.transpose(words.data(), count, w, a.data());
        k->transpose(words.data(), count, w, b.data());
        ASSERT_EQ(a, b) << k->name << " w=" << w << " count=" << count;
        std::vector<std::uint8_t> c(words.size() + 1, 0xEE), d(words.size() + 1, 0xEE);
        ref.untranspose(a.data(), count, w, c.data());
        k->untranspose(a.data(), count, w, d.data());
        ASSERT_EQ(c, d) << k->name << " w=" << w << " count=" << count;
        ASSERT_TRUE(std::equal(words.begin(), words.end(), d.begin()));
      }
    }
  }
}

TEST(Kernels, ActiveIsOneOfTheVariants) {
  const auto& a = kernels::active();
  bool found = false;
  for (const auto* k : variants()) found = found || k->name == a.name;
  EXPECT_TRUE(found) << a.name;
}

#if defined(__x86_64__)
TEST(Kernels, Avx2Name) {
  if (!__builtin_cpu_supports("avx2")) GTEST_SKIP() << "CPU lacks AVX2";
  if (kernels::avx2() == nullptr) GTEST_SKIP() << "built without AVX2 kernels";
  EXPECT_EQ(kernels::avx2()->name, "avx2");
}
#endif
