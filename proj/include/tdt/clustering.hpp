#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tdt/features.hpp"
#include "tdt/typed.hpp"

namespace tdt {

using Point = std::vector<double>;
using Points = std::vector<Point>;

/// One agglomeration: clusters `a` < `b` joined at `distance`. Leaves carry ids
/// 0..n-1; the cluster formed by step s gets id n + s.
struct MergeStep {
  int a;
  int b;
  double distance;
  int size;
};

struct LinkageMatrix {
  int n = 0;
  std::vector<MergeStep> steps;
};

double euclidean(const Point& a, const Point& b);

/// Single-linkage dendrogram. Ties go to the lexicographically lowest
/// (cluster id, cluster id) pair, so the result depends only on the input.
LinkageMatrix single_linkage(const Points& points);
LinkageMatrix linkage(std::span<const FeatureVector> features, FeatureSet set);

/// Undo the last k-1 merges; canonical partition of positions 1..n.
Partition cut(const LinkageMatrix& linkage, int k);

/// Smallest distance between points in different clusters (the max-spacing objective).
double min_inter_cluster_distance(const Partition& plan, const Points& points);

enum class MetricKind { silhouette, davies_bouldin, calinski_harabasz, gap_statistic };

const char* to_string(MetricKind k) noexcept;
MetricKind parse_metric(std::string_view name);

struct ScoreMetric {
  MetricKind kind = MetricKind::davies_bouldin;
  int gap_reference_draws = 10;
  std::uint64_t rng_seed = 0x7D7;
};

struct ClusteringConfig {
  FeatureSet features = FeatureSet::frequency_only;
  ScoreMetric metric{};
};

/// Width 4: byte frequencies + Davies-Bouldin. Width 8: all features + gap
/// statistic. Width 2 never reaches the scorer (its plan is fixed).
ClusteringConfig default_clustering_config(FloatWidth width);

Points select_coordinates(std::span<const FeatureVector> features, FeatureSet set);

/// Larger is better for every metric (Davies-Bouldin is negated). Returns
/// -infinity where the metric is undefined for this plan.
double score(const Partition& plan, const Points& points, const ScoreMetric& metric);
double score(const Partition& plan, std::span<const FeatureVector> features, FeatureSet set,
             const ScoreMetric& metric);

struct ScoredClustering {
  Partition plan;
  int k;
  double score;
};

struct Selection {
  std::vector<ScoredClustering> candidates;  // k = 1..n; empty when forced
  Partition plan;
  bool forced = false;
};

/// Cut the dendrogram at every k, score each cut and keep the best; ties go to
/// the smaller k. Two byte groups always come back as two singletons.
Selection select_clustering_detailed(std::span<const FeatureVector> features, const ClusteringConfig& cfg);
Partition select_clustering(std::span<const FeatureVector> features, const ClusteringConfig& cfg);

/// Every set partition of {1..n}, in restricted-growth-string order.
std::vector<Partition> all_partitions(int n);

}  // namespace tdt
