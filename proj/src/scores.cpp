// Internal cluster-validation metrics used to pick the cluster count.

#include <cmath>
#include <limits>
#include <random>

#include "tdt/clustering.hpp"

namespace tdt {
namespace {

constexpr double kUndefined = -std::numeric_limits<double>::infinity();

struct Labeled {
  std::vector<int> label;  // cluster index per point
  std::vector<int> size;   // members per cluster
};

Labeled label_points(const Partition& plan, std::size_t n) {
  Labeled l{std::vector<int>(n, -1), std::vector<int>(plan.size(), 0)};
  for (std::size_t c = 0; c < plan.size(); ++c) {
    for (int pos : plan[c]) {
      if (pos < 1 || static_cast<std::size_t>(pos) > n) fail(ErrorCode::InvalidPlan, "plan position out of range");
      l.label[static_cast<std::size_t>(pos - 1)] = static_cast<int>(c);
      ++l.size[c];
    }
  }
  for (int x : l.label)
    if (x < 0) fail(ErrorCode::InvalidPlan, "plan does not cover every point");
  return l;
}

Points centroids(const Points& pts, const Labeled& l) {
  const std::size_t dim = pts.front().size();
  Points c(l.size.size(), Point(dim, 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t d = 0; d < dim; ++d) c[static_cast<std::size_t>(l.label[i])][d] += pts[i][d];
  for (std::size_t k = 0; k < c.size(); ++k)
    for (auto& x : c[k]) x /= static_cast<double>(l.size[k]);
  return c;
}

double squared(const Point& a, const Point& b) {
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return ss;
}

double silhouette(const Points& pts, const Labeled& l) {
  const std::size_t n = pts.size();
  const std::size_t k = l.size.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int own = l.label[i];
    if (l.size[static_cast<std::size_t>(own)] == 1) continue;  // s(i) = 0
    std::vector<double> sum(k, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum[static_cast<std::size_t>(l.label[j])] += euclidean(pts[i], pts[j]);
    const double a = sum[static_cast<std::size_t>(own)] / (l.size[static_cast<std::size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c)
      if (static_cast<int>(c) != own) b = std::min(b, sum[c] / l.size[c]);
    const double m = std::max(a, b);
    if (m > 0.0) total += (b - a) / m;
  }
  return total / static_cast<double>(n);
}

double davies_bouldin(const Points& pts, const Labeled& l) {
  const std::size_t k = l.size.size();
  const Points c = centroids(pts, l);
  std::vector<double> scatter(k, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto lab = static_cast<std::size_t>(l.label[i]);
    scatter[lab] += euclidean(pts[i], c[lab]);
  }
  bool all_tight = true;
  for (std::size_t r = 0; r < k; ++r) {
    scatter[r] /= l.size[r];
    if (scatter[r] != 0.0) all_tight = false;
  }
  if (all_tight) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    double worst = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      if (s == r) continue;
      const double m = euclidean(c[r], c[s]);
      // Coincident centroids are treated as infinitely far apart (ratio 0).
      if (m == 0.0) continue;
      worst = std::max(worst, (scatter[r] + scatter[s]) / m);
    }
    sum += worst;
  }
  return sum / static_cast<double>(k);
}

double calinski_harabasz(const Points& pts, const Labeled& l) {
  const std::size_t n = pts.size();
  const std::size_t k = l.size.size();
  const Points c = centroids(pts, l);
  Point mean(pts.front().size(), 0.0);
  for (const auto& p : pts)
    for (std::size_t d = 0; d < p.size(); ++d) mean[d] += p[d];
  for (auto& x : mean) x /= static_cast<double>(n);
  double between = 0.0, within = 0.0;
  for (std::size_t r = 0; r < k; ++r) between += l.size[r] * squared(c[r], mean);
  for (std::size_t i = 0; i < n; ++i) within += squared(pts[i], c[static_cast<std::size_t>(l.label[i])]);
  if (within == 0.0) return between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
}

double within_dispersion(const Points& pts, const Labeled& l) {
  const Points c = centroids(pts, l);
  double w = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) w += squared(pts[i], c[static_cast<std::size_t>(l.label[i])]);
  return w;
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gap_statistic(const Points& pts, const Partition& plan, const Labeled& l, const ScoreMetric& metric) {
  const std::size_t n = pts.size();
  const std::size_t dim = pts.front().size();
  const int k = static_cast<int>(plan.size());
  if (metric.gap_reference_draws < 1) fail(ErrorCode::InvalidArgument, "gap statistic needs at least one reference draw");

  Point lo = pts.front(), hi = pts.front();
  for (const auto& p : pts)
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }

  // The same reference sets are drawn for every k because the generator is reseeded per call.
  std::mt19937_64 rng(metric.rng_seed);
  double ref_log_sum = 0.0;
  for (int b = 0; b < metric.gap_reference_draws; ++b) {
    Points ref(n, Point(dim));
    for (auto& p : ref)
      for (std::size_t d = 0; d < dim; ++d) p[d] = lo[d] + (hi[d] - lo[d]) * unit(rng);
    const Partition ref_plan = cut(single_linkage(ref), k);
    ref_log_sum += std::log(within_dispersion(ref, label_points(ref_plan, n)));
  }
  const double gap = ref_log_sum / metric.gap_reference_draws - std::log(within_dispersion(pts, l));
  // Degenerate data (all points identical): both logs are -inf.
  return std::isnan(gap) ? 0.0 : gap;
}

}  // namespace

double score(const Partition& plan, const Points& points, const ScoreMetric& metric) {
  if (points.empty()) fail(ErrorCode::TooFewGroups, "no points to score");
  const Labeled l = label_points(plan, points.size());
  const std::size_t k = plan.size();
  const std::size_t n = points.size();
  // Every metric degenerates when each point is its own cluster.
  if (k >= n) return kUndefined;
  switch (metric.kind) {
    case MetricKind::silhouette:
      return k < 2 ? kUndefined : silhouette(points, l);
    case MetricKind::davies_bouldin:
      return k < 2 ? kUndefined : -davies_bouldin(points, l);
    case MetricKind::calinski_harabasz:
      return k < 2 ? kUndefined : calinski_harabasz(points, l);
    case MetricKind::gap_statistic:
      return gap_statistic(points, plan, l, metric);
  }
  return kUndefined;
}

double score(const Partition& plan, std::span<const FeatureVector> features, FeatureSet set,
             const ScoreMetric& metric) {
  return score(plan, select_coordinates(features, set), metric);
}

}  // namespace tdt
