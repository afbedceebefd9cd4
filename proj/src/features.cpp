#include "tdt/features.hpp"

#include <algorithm>
#include <cmath>

namespace tdt {

const char* to_string(FeatureSet s) noexcept {
  switch (s) {
    case FeatureSet::entropy_only: return "entropy_only";
    case FeatureSet::frequency_only: return "frequency_only";
    case FeatureSet::combined: return "combined";
  }
  return "combined";
}

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "entropy_only" || name == "entropy") return FeatureSet::entropy_only;
  if (name == "frequency_only" || name == "frequency") return FeatureSet::frequency_only;
  if (name == "combined" || name == "all") return FeatureSet::combined;
  fail(ErrorCode::InvalidArgument, "unknown feature set '" + std::string(name) + "'");
}

std::vector<double> FeatureVector::coordinates(FeatureSet set) const {
  std::vector<double> out;
  out.reserve(kDims);
  if (set != FeatureSet::frequency_only) {
    out.insert(out.end(), {avg_entropy, std_entropy, max_entropy, min_entropy});
  }
  if (set != FeatureSet::entropy_only) out.insert(out.end(), byte_freq.begin(), byte_freq.end());
  return out;
}

std::array<std::uint64_t, 256> byte_histogram(ByteSpan bytes) {
  std::array<std::uint64_t, 256> counts{};
  if (bytes.size() < 1024) {
    for (std::uint8_t b : bytes) ++counts[b];
    return counts;
  }
  // Four interleaved tables break the store-to-load dependency on runs of equal bytes.
  std::array<std::array<std::uint32_t, 256>, 4> part{};
  std::size_t i = 0;
  // Flush before any 32-bit sub-count could overflow.
  constexpr std::size_t kFlush = std::size_t{1} << 30;
  while (i < bytes.size()) {
    const std::size_t end = std::min(bytes.size(), i + kFlush);
    for (; i + 4 <= end; i += 4) {
      ++part[0][bytes[i]];
      ++part[1][bytes[i + 1]];
      ++part[2][bytes[i + 2]];
      ++part[3][bytes[i + 3]];
    }
    for (; i < end; ++i) ++part[0][bytes[i]];
    for (auto& t : part) {
      for (std::size_t s = 0; s < 256; ++s) counts[s] += t[s];
      t.fill(0);
    }
  }
  return counts;
}

double histogram_entropy(const std::array<std::uint64_t, 256>& counts, std::uint64_t total) {
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double block_entropy(ByteSpan bytes) {
  if (bytes.empty()) fail(ErrorCode::EmptyInput, "entropy of an empty byte sequence");
  return histogram_entropy(byte_histogram(bytes), bytes.size());
}

FeatureVector feature_extraction(ByteSpan group, const FeatureConfig& cfg) {
  if (group.empty()) fail(ErrorCode::EmptyInput, "feature extraction on an empty byte group");
  if (cfg.entropy_block_size == 0) fail(ErrorCode::InvalidArgument, "entropy_block_size must be >= 1");

  std::vector<double> h;
  h.reserve(group.size() / cfg.entropy_block_size + 1);
  for (std::size_t off = 0; off < group.size(); off += cfg.entropy_block_size) {
    const std::size_t len = std::min(cfg.entropy_block_size, group.size() - off);
    h.push_back(block_entropy(group.subspan(off, len)));
  }

  FeatureVector f;
  const double n = static_cast<double>(h.size());
  double sum = 0.0;
  for (double x : h) sum += x;
  f.avg_entropy = sum / n;
  f.max_entropy = *std::max_element(h.begin(), h.end());
  f.min_entropy = *std::min_element(h.begin(), h.end());
  if (h.size() > 1) {
    double ss = 0.0;
    for (double x : h) ss += (x - f.avg_entropy) * (x - f.avg_entropy);
    f.std_entropy = std::sqrt(ss / (n - 1.0));
  }

  const auto counts = byte_histogram(group);
  const double total = static_cast<double>(group.size());
  for (std::size_t s = 0; s < 256; ++s) f.byte_freq[s] = static_cast<double>(counts[s]) / total;
  return f;
}

std::vector<FeatureVector> extract_features(const TypedView& v, const FeatureConfig& cfg) {
  std::vector<FeatureVector> out;
  out.reserve(static_cast<std::size_t>(v.width().bytes()));
  for (int p = 1; p <= v.width().bytes(); ++p) out.push_back(feature_extraction(extract_group(v, p), cfg));
  return out;
}

double feature_distance(const FeatureVector& a, const FeatureVector& b, FeatureSet set) {
  double ss = 0.0;
  if (set != FeatureSet::frequency_only) {
    const double d[4] = {a.avg_entropy - b.avg_entropy, a.std_entropy - b.std_entropy,
                         a.max_entropy - b.max_entropy, a.min_entropy - b.min_entropy};
    for (double x : d) ss += x * x;
  }
  if (set != FeatureSet::entropy_only) {
    for (std::size_t s = 0; s < 256; ++s) {
      const double x = a.byte_freq[s] - b.byte_freq[s];
      ss += x * x;
    }
  }
  return std::sqrt(ss);
}

}  // namespace tdt
