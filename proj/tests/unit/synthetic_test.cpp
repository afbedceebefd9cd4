#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <set>

#include "tdt/synthetic.hpp"

using namespace tdt;
using synthetic::Family;

TEST(Synthetic, Deterministic) {
  for (Family f : synthetic::kFamilies) {
    EXPECT_EQ(synthetic::generate(f, 3, 1000, FloatWidth(4)), synthetic::generate(f, 3, 1000, FloatWidth(4)));
    EXPECT_NE(synthetic::generate(f, 3, 1000, FloatWidth(4)), synthetic::generate(f, 4, 1000, FloatWidth(4)))
        << synthetic::to_string(f);
  }
}

TEST(Synthetic, SizesFollowWidth) {
  for (int w : {2, 4, 8})
    for (Family f : synthetic::kFamilies) EXPECT_EQ(synthetic::generate(f, 1, 321, FloatWidth(w)).size(), 321u * w);
  EXPECT_TRUE(synthetic::generate(Family::smooth, 1, 0, FloatWidth(4)).empty());
}

TEST(Synthetic, ValuesAreFinite) {
  for (Family f : synthetic::kFamilies) {
    const Bytes b = synthetic::generate(f, 2, 5000, FloatWidth(8));
    for (std::size_t i = 0; i < b.size(); i += 8) {
      double x;
      std::memcpy(&x, b.data() + i, 8);
      ASSERT_TRUE(std::isfinite(x)) << synthetic::to_string(f) << " at " << i / 8;
    }
  }
}

TEST(Synthetic, SuiteHasFortyNamedDatasets) {
  const auto suite = synthetic::suite(1000);
  ASSERT_EQ(suite.size(), 40u);
  std::set<std::string> names;
  std::set<Bytes> contents;
  for (const auto& d : suite) {
    EXPECT_EQ(d.name, std::string(synthetic::to_string(d.family)) + "-" + std::to_string(d.seed));
    EXPECT_EQ(d.data.size(), 4000u);
    EXPECT_EQ(d.data, synthetic::generate(d.family, d.seed, 1000, FloatWidth(4)));
    names.insert(d.name);
    contents.insert(d.data);
  }
  EXPECT_EQ(names.size(), 40u);
  EXPECT_EQ(contents.size(), 40u);
}
