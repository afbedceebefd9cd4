#include "tdt/synthetic.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

namespace tdt::synthetic {
namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller keeps the stream identical across standard libraries.
double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint16_t to_half(float f) {
  const auto bits = std::bit_cast<std::uint32_t>(f);
  const std::uint32_t sign = (bits >> 16) & 0x8000u;
  const int exp = static_cast<int>((bits >> 23) & 0xFF) - 127 + 15;
  std::uint32_t mant = bits & 0x7FFFFFu;
  if (exp <= 0) return static_cast<std::uint16_t>(sign);
  if (exp >= 31) return static_cast<std::uint16_t>(sign | 0x7C00u);
  mant = (mant + 0x1000u) >> 13;  // round half up
  std::uint32_t h = sign | (static_cast<std::uint32_t>(exp) << 10);
  h += mant;  // a mantissa carry bumps the exponent
  return static_cast<std::uint16_t>(h);
}

template <typename T>
void put(Bytes& out, std::size_t i, T v) {
  // Little-endian regardless of host order.
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(T));
  for (std::size_t b = 0; b < sizeof(T); ++b) out[i * sizeof(T) + b] = static_cast<std::uint8_t>(bits >> (8 * b));
}

double sample(Family family, std::mt19937_64& rng, std::size_t i, std::size_t count, double& state,
              const double (&shape)[4]) {
  const double t = static_cast<double>(i);
  switch (family) {
    case Family::smooth:
      return shape[0] * std::sin(t * shape[1]) + 0.3 * shape[0] * std::sin(t * shape[1] * 7.3 + shape[2]) +
             1e-3 * gaussian(rng);
    case Family::random_walk:
      state += shape[3] * gaussian(rng);
      return state;
    case Family::quantized:
      return std::round((shape[0] * std::sin(t * shape[1]) + 2.0 * shape[0] + 0.05 * gaussian(rng)) * 100.0) / 100.0;
    case Family::random_mantissa:
      return shape[0] * (1.0 + uniform01(rng));
    case Family::truncated_mantissa: {
      const auto f = static_cast<float>(shape[0] * gaussian(rng));
      return static_cast<double>(std::bit_cast<float>(std::bit_cast<std::uint32_t>(f) & 0xFFFF0000u));
    }
    case Family::drifting_exponent:
      return std::exp2(12.0 * t / static_cast<double>(count) - 6.0) * (1.0 + 0.01 * std::sin(t * shape[1]) +
                                                                           1e-4 * gaussian(rng));
    case Family::integers:
      return std::round(shape[2] * 100.0 * (2.0 + std::sin(t * shape[1])) + 3.0 * gaussian(rng));
    case Family::noisy_sensor:
      return shape[0] * (3.0 + std::sin(t * shape[1]) + 0.01 * gaussian(rng));
  }
  return 0.0;
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::smooth: return "smooth";
    case Family::random_walk: return "random_walk";
    case Family::quantized: return "quantized";
    case Family::random_mantissa: return "random_mantissa";
    case Family::truncated_mantissa: return "truncated_mantissa";
    case Family::drifting_exponent: return "drifting_exponent";
    case Family::integers: return "integers";
    case Family::noisy_sensor: return "noisy_sensor";
  }
  return "?";
}

Bytes generate(Family family, std::uint64_t seed, std::size_t count, FloatWidth width) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(family));
  // Per-dataset amplitude, frequency, phase and step scale.
  const double shape[4] = {std::exp2(uniform01(rng) * 8.0 - 2.0), 1e-3 + uniform01(rng) * 2e-2,
                           1.0 + uniform01(rng) * 3.0, 1e-3 + uniform01(rng) * 1e-2};
  double state = shape[0];
  const auto w = static_cast<std::size_t>(width.bytes());
  Bytes out(count * w);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = sample(family, rng, i, count, state, shape);
    switch (w) {
      case 2: put(out, i, to_half(static_cast<float>(x))); break;
      case 4: put(out, i, static_cast<float>(x)); break;
      default: put(out, i, x); break;
    }
  }
  return out;
}

std::vector<Dataset> suite(std::size_t values_per_dataset) {
  std::vector<Dataset> out;
  for (Family f : kFamilies) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      out.push_back({std::string(to_string(f)) + "-" + std::to_string(seed), f, seed,
                     generate(f, seed, values_per_dataset, FloatWidth(4))});
    }
  }
  return out;
}

}  // namespace tdt::synthetic
