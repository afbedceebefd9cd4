#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdt/features.hpp"
#include "tdt/typed.hpp"

namespace tdt {

struct GroupEntropy {
  int position;
  double avg_entropy;    // mean of the block entropies
  double whole_entropy;  // entropy of the entire byte group
};

struct EntropyProfile {
  double dataset_entropy;  // every byte of the dataset as one symbol stream
  std::vector<GroupEntropy> per_group;
};

EntropyProfile entropy_profile(const TypedView& v, const FeatureConfig& cfg);

/// Empirical order-k entropy in bits per symbol:
///   H_k = (1/N) * sum over contexts w of |w_next| * H0(w_next)
/// where w_next holds the bytes that follow each occurrence of the k-byte
/// context w. H_0 is the byte-histogram entropy, and H_{k+1} <= H_k.
double order_k_entropy(ByteSpan data, int k);

struct RatioReport {
  std::uint64_t original_size = 0;
  std::uint64_t compressed_size = 0;
  double cr = 0.0;
  std::optional<double> baseline_cr;
  std::optional<double> cri;
  std::optional<double> ct;  // compression throughput, bytes/second
  std::optional<double> dt;  // decompression throughput, bytes/second
};

RatioReport report(std::uint64_t original_size, std::uint64_t compressed_size,
                   std::optional<std::uint64_t> baseline_compressed_size = std::nullopt);

/// Report with a baseline given as a ratio rather than a size.
RatioReport report_vs_baseline_cr(std::uint64_t original_size, std::uint64_t compressed_size, double baseline_cr);

double geometric_mean(std::span<const double> values);

/// One JSON object per line; `labels` become string fields of the record.
std::string to_json_line(const RatioReport& r, const std::map<std::string, std::string>& labels = {});
std::string to_text_line(const RatioReport& r);

}  // namespace tdt
