#pragma once

#include <string>
#include <vector>

#include "tdt/typed.hpp"

namespace tdt::synthetic {

enum class Family {
  smooth,              // sine mixture plus small noise
  random_walk,         // cumulative Gaussian steps
  quantized,           // smooth series rounded to two decimals
  random_mantissa,     // constant exponent, uniform mantissa
  truncated_mantissa,  // Gaussian values with the low 16 mantissa bits cleared
  drifting_exponent,   // magnitude sweeps several octaves
  integers,            // slowly varying counts stored as floats
  noisy_sensor,        // offset sine with 1% Gaussian noise
};

inline constexpr Family kFamilies[] = {Family::smooth,          Family::random_walk,        Family::quantized,
                                       Family::random_mantissa, Family::truncated_mantissa, Family::drifting_exponent,
                                       Family::integers,        Family::noisy_sensor};

const char* to_string(Family f) noexcept;

/// `count` values of `family` encoded at `width` (IEEE half, single or double,
/// stored little-endian). Identical arguments give identical bytes.
Bytes generate(Family family, std::uint64_t seed, std::size_t count, FloatWidth width);

struct Dataset {
  std::string name;
  Family family;
  std::uint64_t seed;
  Bytes data;
};

/// The 40-dataset float32 suite: every family with seeds 1..5.
std::vector<Dataset> suite(std::size_t values_per_dataset = 262144);

}  // namespace tdt::synthetic
