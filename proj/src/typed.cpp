#include "tdt/typed.hpp"

#include <algorithm>
#include <charconv>

namespace tdt {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::LengthNotMultipleOfWidth: return "LengthNotMultipleOfWidth";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewGroups: return "TooFewGroups";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::KTooLargeForData: return "KTooLargeForData";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingProfile: return "MissingProfile";
    case ErrorCode::UnknownCodec: return "UnknownCodec";
    case ErrorCode::CodecUnavailable: return "CodecUnavailable";
    case ErrorCode::CorruptStream: return "CorruptStream";
    case ErrorCode::InconsistentLengths: return "InconsistentLengths";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

FloatWidth::FloatWidth(int bytes_per_word) : bytes_(bytes_per_word) {
  if (bytes_per_word != 2 && bytes_per_word != 4 && bytes_per_word != 8) {
    fail(ErrorCode::InvalidWidth, "word width must be 2, 4 or 8 bytes, got " + std::to_string(bytes_per_word));
  }
}

TypedView::TypedView(ByteSpan data, FloatWidth width) : data_(data), width_(width) {
  if (data.size() % static_cast<std::size_t>(width.bytes()) != 0) {
    fail(ErrorCode::LengthNotMultipleOfWidth,
         std::to_string(data.size()) + " bytes is not a multiple of width " + std::to_string(width.bytes()));
  }
}

TypedView TypedView::values(std::size_t first, std::size_t count) const {
  const auto w = static_cast<std::size_t>(width_.bytes());
  if (first > value_count() || count > value_count() - first) {
    fail(ErrorCode::InvalidArgument, "value range out of bounds");
  }
  return TypedView(data_.subspan(first * w, count * w), width_);
}

TypedView view(ByteSpan data, FloatWidth width) { return TypedView(data, width); }

ByteGroup extract_group(const TypedView& v, int position) {
  const int n = v.width().bytes();
  if (position < 1 || position > n) {
    fail(ErrorCode::PositionOutOfRange,
         "position " + std::to_string(position) + " outside 1.." + std::to_string(n));
  }
  ByteGroup g{position, Bytes(v.value_count())};
  const auto* src = v.data().data() + (position - 1);
  for (std::size_t j = 0; j < g.bytes.size(); ++j) g.bytes[j] = src[j * static_cast<std::size_t>(n)];
  return g;
}

Partition canonicalize(Partition p, int n) {
  if (n < 1 || n > 255) fail(ErrorCode::InvalidPlan, "position count out of range");
  if (p.empty() || static_cast<int>(p.size()) > n) fail(ErrorCode::InvalidPlan, "cluster count must be in 1..n");
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (auto& cluster : p) {
    if (cluster.empty()) fail(ErrorCode::InvalidPlan, "empty cluster");
    for (int pos : cluster) {
      if (pos < 1 || pos > n) fail(ErrorCode::InvalidPlan, "position " + std::to_string(pos) + " out of range");
      if (seen[static_cast<std::size_t>(pos)]++) fail(ErrorCode::InvalidPlan, "position " + std::to_string(pos) + " repeated");
    }
    std::sort(cluster.begin(), cluster.end());
  }
  for (int pos = 1; pos <= n; ++pos) {
    if (!seen[static_cast<std::size_t>(pos)]) fail(ErrorCode::InvalidPlan, "position " + std::to_string(pos) + " missing");
  }
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

std::string format_partition(const Partition& p) {
  std::string out;
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (c) out += '|';
    out += '{';
    for (std::size_t i = 0; i < p[c].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(p[c][i]);
    }
    out += '}';
  }
  return out;
}

Partition parse_partition(std::string_view text, int n) {
  Partition p;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto bad = [&](const char* what) -> Partition {
    fail(ErrorCode::InvalidPlan, std::string(what) + " in plan '" + std::string(text) + "'");
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '{') return bad("expected '{'");
    ++i;
    std::vector<int> cluster;
    while (true) {
      skip_ws();
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc{}) return bad("expected a position");
      i = static_cast<std::size_t>(ptr - text.data());
      cluster.push_back(value);
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      if (i < text.size() && text[i] == '}') { ++i; break; }
      return bad("expected ',' or '}'");
    }
    p.push_back(std::move(cluster));
    skip_ws();
    if (i < text.size()) {
      if (text[i] != '|') return bad("expected '|'");
      ++i;
      skip_ws();
    }
  }
  return canonicalize(std::move(p), n);
}

const char* to_string(Packing p) noexcept { return p == Packing::same_byte ? "same_byte" : "same_value"; }

Packing parse_packing(std::string_view name) {
  if (name == "same_byte") return Packing::same_byte;
  if (name == "same_value") return Packing::same_value;
  fail(ErrorCode::InvalidArgument, "unknown packing '" + std::string(name) + "'");
}

ClusteringPlan::ClusteringPlan(FloatWidth width, Partition clusters, Packing packing)
    : width_(width), clusters_(canonicalize(std::move(clusters), width.bytes())), packing_(packing) {}

ClusteringPlan ClusteringPlan::single_cluster(FloatWidth width, Packing packing) {
  std::vector<int> all(static_cast<std::size_t>(width.bytes()));
  for (int i = 0; i < width.bytes(); ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return ClusteringPlan(width, Partition{all}, packing);
}

ClusteringPlan ClusteringPlan::singletons(FloatWidth width, Packing packing) {
  Partition p;
  for (int i = 1; i <= width.bytes(); ++i) p.push_back({i});
  return ClusteringPlan(width, std::move(p), packing);
}

ClusteringPlan ClusteringPlan::from_assignment(FloatWidth width, std::span<const std::uint8_t> assignment,
                                               Packing packing) {
  if (assignment.size() != static_cast<std::size_t>(width.bytes())) {
    fail(ErrorCode::InvalidPlan, "assignment length does not match width");
  }
  Partition p;
  for (std::size_t pos = 0; pos < assignment.size(); ++pos) {
    const std::size_t c = assignment[pos];
    if (c > p.size()) fail(ErrorCode::InvalidPlan, "cluster indices are not in canonical order");
    if (c == p.size()) p.emplace_back();
    p[c].push_back(static_cast<int>(pos) + 1);
  }
  return ClusteringPlan(width, std::move(p), packing);
}

std::vector<std::uint8_t> ClusteringPlan::assignment() const {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(width_.bytes()));
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    for (int pos : clusters_[c]) a[static_cast<std::size_t>(pos - 1)] = static_cast<std::uint8_t>(c);
  }
  return a;
}

ClusteringPlan ClusteringPlan::with_packing(Packing packing) const {
  ClusteringPlan copy = *this;
  copy.packing_ = packing;
  return copy;
}

}  // namespace tdt
