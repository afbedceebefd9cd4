#include "tdt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>

#include <json.hpp>

namespace tdt {
namespace {

// n * log2(n), with 0 log 0 = 0.
inline double nlogn(std::uint64_t n) {
  return n < 2 ? 0.0 : static_cast<double>(n) * std::log2(static_cast<double>(n));
}

// Contribution |w| * H0(w) of one context whose successors appear with the given counts.
struct ContextAccumulator {
  double total = 0.0;
  std::uint64_t ctx_len = 0;
  double ctx_sum = 0.0;

  void symbol_run(std::uint64_t count) {
    ctx_len += count;
    ctx_sum += nlogn(count);
  }
  void end_context() {
    total += nlogn(ctx_len) - ctx_sum;
    ctx_len = 0;
    ctx_sum = 0.0;
  }
};

double packed_order_k(ByteSpan data, int k) {
  const std::size_t n = data.size();
  std::vector<std::uint64_t> keys;
  keys.reserve(n - static_cast<std::size_t>(k));
  const std::uint64_t mask = k == 7 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * (k + 1))) - 1;
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    key = ((key << 8) | data[i]) & mask;
    if (i >= static_cast<std::size_t>(k)) keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  ContextAccumulator acc;
  std::size_t i = 0;
  while (i < keys.size()) {
    const std::uint64_t ctx = keys[i] >> 8;
    while (i < keys.size() && (keys[i] >> 8) == ctx) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      acc.symbol_run(j - i);
      i = j;
    }
    acc.end_context();
  }
  return acc.total;
}

double generic_order_k(ByteSpan data, int k) {
  const std::size_t n = data.size();
  const auto len = static_cast<std::size_t>(k) + 1;
  std::vector<std::size_t> starts(n - static_cast<std::size_t>(k));
  std::iota(starts.begin(), starts.end(), std::size_t{0});
  const std::uint8_t* p = data.data();
  std::sort(starts.begin(), starts.end(), [&](std::size_t a, std::size_t b) { return std::memcmp(p + a, p + b, len) < 0; });
  ContextAccumulator acc;
  std::size_t i = 0;
  while (i < starts.size()) {
    const std::size_t ctx = starts[i];
    while (i < starts.size() && std::memcmp(p + starts[i], p + ctx, len - 1) == 0) {
      std::size_t j = i;
      while (j < starts.size() && std::memcmp(p + starts[j], p + starts[i], len) == 0) ++j;
      acc.symbol_run(j - i);
      i = j;
    }
    acc.end_context();
  }
  return acc.total;
}

}  // namespace

EntropyProfile entropy_profile(const TypedView& v, const FeatureConfig& cfg) {
  if (v.empty()) fail(ErrorCode::EmptyInput, "entropy profile of an empty dataset");
  EntropyProfile out{block_entropy(v.data()), {}};
  for (int p = 1; p <= v.width().bytes(); ++p) {
    const ByteGroup g = extract_group(v, p);
    const FeatureVector f = feature_extraction(g, cfg);
    out.per_group.push_back({p, f.avg_entropy, block_entropy(g.bytes)});
  }
  return out;
}

double order_k_entropy(ByteSpan data, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "order k must be non-negative");
  if (data.empty()) fail(ErrorCode::EmptyInput, "order-k entropy of an empty sequence");
  if (data.size() <= static_cast<std::size_t>(k)) {
    fail(ErrorCode::KTooLargeForData, "order " + std::to_string(k) + " needs more than " + std::to_string(k) + " bytes");
  }
  if (k == 0) return block_entropy(data);
  const double total = k <= 7 ? packed_order_k(data, k) : generic_order_k(data, k);
  return std::max(0.0, total / static_cast<double>(data.size()));
}

RatioReport report(std::uint64_t original_size, std::uint64_t compressed_size,
                   std::optional<std::uint64_t> baseline_compressed_size) {
  if (compressed_size == 0) fail(ErrorCode::InvalidArgument, "compressed size must be positive");
  RatioReport r;
  r.original_size = original_size;
  r.compressed_size = compressed_size;
  r.cr = static_cast<double>(original_size) / static_cast<double>(compressed_size);
  if (baseline_compressed_size) {
    if (*baseline_compressed_size == 0) fail(ErrorCode::InvalidArgument, "baseline size must be positive");
    r.baseline_cr = static_cast<double>(original_size) / static_cast<double>(*baseline_compressed_size);
    r.cri = r.cr / *r.baseline_cr;
  }
  return r;
}

RatioReport report_vs_baseline_cr(std::uint64_t original_size, std::uint64_t compressed_size, double baseline_cr) {
  if (!(baseline_cr > 0.0)) fail(ErrorCode::InvalidArgument, "baseline CR must be positive");
  RatioReport r = report(original_size, compressed_size);
  r.baseline_cr = baseline_cr;
  r.cri = r.cr / baseline_cr;
  return r;
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(v);
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::string to_json_line(const RatioReport& r, const std::map<std::string, std::string>& labels) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : labels) j[k] = v;
  j["original_size"] = r.original_size;
  j["compressed_size"] = r.compressed_size;
  j["cr"] = r.cr;
  j["baseline_cr"] = r.baseline_cr ? nlohmann::ordered_json(*r.baseline_cr) : nlohmann::ordered_json(nullptr);
  j["cri"] = r.cri ? nlohmann::ordered_json(*r.cri) : nlohmann::ordered_json(nullptr);
  j["ct_bytes_per_s"] = r.ct ? nlohmann::ordered_json(*r.ct) : nlohmann::ordered_json(nullptr);
  j["dt_bytes_per_s"] = r.dt ? nlohmann::ordered_json(*r.dt) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string to_text_line(const RatioReport& r) {
  char buf[256];
  int n = std::snprintf(buf, sizeof buf, "original=%llu compressed=%llu CR=%.4f",
                        static_cast<unsigned long long>(r.original_size),
                        static_cast<unsigned long long>(r.compressed_size), r.cr);
  std::string out(buf, static_cast<std::size_t>(n));
  if (r.baseline_cr) {
    n = std::snprintf(buf, sizeof buf, " baseline_CR=%.4f CRI=%.4f", *r.baseline_cr, *r.cri);
    out.append(buf, static_cast<std::size_t>(n));
  }
  if (r.ct) {
    n = std::snprintf(buf, sizeof buf, " CT=%.1fMB/s", *r.ct / 1e6);
    out.append(buf, static_cast<std::size_t>(n));
  }
  if (r.dt) {
    n = std::snprintf(buf, sizeof buf, " DT=%.1fMB/s", *r.dt / 1e6);
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

}  // namespace tdt
