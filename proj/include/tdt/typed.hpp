#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdt/error.hpp"

namespace tdt {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

/// Word width of a floating-point type: 2 (half), 4 (single) or 8 (double) bytes.
class FloatWidth {
 public:
  explicit FloatWidth(int bytes_per_word);

  int bytes() const noexcept { return bytes_; }
  friend bool operator==(FloatWidth, FloatWidth) = default;

 private:
  int bytes_;
};

/// Raw bytes interpreted as fixed-width words. Non-owning; the caller keeps
/// the underlying buffer alive.
class TypedView {
 public:
  TypedView(ByteSpan data, FloatWidth width);

  ByteSpan data() const noexcept { return data_; }
  FloatWidth width() const noexcept { return width_; }
  std::size_t value_count() const noexcept { return data_.size() / static_cast<std::size_t>(width_.bytes()); }
  bool empty() const noexcept { return data_.empty(); }

  /// Values [first, first + count) as a view of their own.
  TypedView values(std::size_t first, std::size_t count) const;

 private:
  ByteSpan data_;
  FloatWidth width_;
};

/// Throws LengthNotMultipleOfWidth when the buffer cannot be split into whole words.
TypedView view(ByteSpan data, FloatWidth width);

/// One byte from every word, taken at a fixed 1-based position in memory order.
struct ByteGroup {
  int position;
  Bytes bytes;
};

ByteGroup extract_group(const TypedView& v, int position);

/// Partition of byte positions 1..n, kept in canonical order: clusters sorted
/// by smallest position, positions ascending within each cluster.
using Partition = std::vector<std::vector<int>>;

/// Validates that `p` partitions 1..n and returns its canonical form.
Partition canonicalize(Partition p, int n);

/// `{1,2}|{3}|{4}`
std::string format_partition(const Partition& p);
Partition parse_partition(std::string_view text, int n);

enum class Packing : std::uint8_t { same_byte = 0, same_value = 1 };

const char* to_string(Packing p) noexcept;
Packing parse_packing(std::string_view name);

/// The complete recipe of the transform: which byte positions travel together
/// and how bytes are laid out inside each cluster stream.
class ClusteringPlan {
 public:
  ClusteringPlan(FloatWidth width, Partition clusters, Packing packing = Packing::same_byte);

  static ClusteringPlan single_cluster(FloatWidth width, Packing packing = Packing::same_byte);
  static ClusteringPlan singletons(FloatWidth width, Packing packing = Packing::same_byte);
  /// Cluster index (0-based, canonical order) of every position, in position order.
  static ClusteringPlan from_assignment(FloatWidth width, std::span<const std::uint8_t> assignment,
                                        Packing packing = Packing::same_byte);

  FloatWidth width() const noexcept { return width_; }
  Packing packing() const noexcept { return packing_; }
  const Partition& clusters() const noexcept { return clusters_; }
  int cluster_count() const noexcept { return static_cast<int>(clusters_.size()); }
  std::vector<std::uint8_t> assignment() const;

  /// Plan with the same clusters and a different packing.
  ClusteringPlan with_packing(Packing packing) const;

  std::string to_string() const { return format_partition(clusters_); }

  friend bool operator==(const ClusteringPlan&, const ClusteringPlan&) = default;

 private:
  FloatWidth width_;
  Partition clusters_;
  Packing packing_;
};

}  // namespace tdt
