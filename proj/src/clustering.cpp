#include "tdt/clustering.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace tdt {

double euclidean(const Point& a, const Point& b) {
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    ss += d * d;
  }
  return std::sqrt(ss);
}

Points select_coordinates(std::span<const FeatureVector> features, FeatureSet set) {
  Points pts;
  pts.reserve(features.size());
  for (const auto& f : features) pts.push_back(f.coordinates(set));
  return pts;
}

LinkageMatrix single_linkage(const Points& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) fail(ErrorCode::TooFewGroups, "linkage needs at least two byte groups");

  std::vector<double> dist(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist[static_cast<std::size_t>(i * n + j)] = euclidean(points[i], points[j]);

  struct Active {
    int id;
    std::vector<int> members;
  };
  std::vector<Active> active;
  for (int i = 0; i < n; ++i) active.push_back({i, {i}});

  LinkageMatrix L{n, {}};
  for (int step = 0; step < n - 1; ++step) {
    double best = std::numeric_limits<double>::infinity();
    int best_a = -1, best_b = -1;
    std::size_t ia = 0, ib = 0;
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        double d = std::numeric_limits<double>::infinity();
        for (int p : active[x].members)
          for (int q : active[y].members) d = std::min(d, dist[static_cast<std::size_t>(p * n + q)]);
        const int a = std::min(active[x].id, active[y].id);
        const int b = std::max(active[x].id, active[y].id);
        const bool better = d < best || (d == best && (a < best_a || (a == best_a && b < best_b)));
        if (best_a < 0 || better) {
          best = d;
          best_a = a;
          best_b = b;
          ia = x;
          ib = y;
        }
      }
    }
    Active merged{n + step, active[ia].members};
    merged.members.insert(merged.members.end(), active[ib].members.begin(), active[ib].members.end());
    L.steps.push_back({best_a, best_b, best, static_cast<int>(merged.members.size())});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(ib));
    active[ia] = std::move(merged);
  }
  return L;
}

LinkageMatrix linkage(std::span<const FeatureVector> features, FeatureSet set) {
  return single_linkage(select_coordinates(features, set));
}

Partition cut(const LinkageMatrix& L, int k) {
  const int n = L.n;
  if (k < 1 || k > n) fail(ErrorCode::KOutOfRange, "k=" + std::to_string(k) + " outside 1.." + std::to_string(n));

  // Replay the first n-k merges with union-find over leaf ids.
  std::vector<int> parent(static_cast<std::size_t>(2 * n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int s = 0; s < n - k; ++s) {
    const auto& m = L.steps[static_cast<std::size_t>(s)];
    parent[static_cast<std::size_t>(find(m.a))] = n + s;
    parent[static_cast<std::size_t>(find(m.b))] = n + s;
  }

  Partition p;
  std::vector<int> root_to_cluster(static_cast<std::size_t>(2 * n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto& slot = root_to_cluster[static_cast<std::size_t>(r)];
    if (slot < 0) {
      slot = static_cast<int>(p.size());
      p.emplace_back();
    }
    p[static_cast<std::size_t>(slot)].push_back(i + 1);
  }
  return canonicalize(std::move(p), n);
}

double min_inter_cluster_distance(const Partition& plan, const Points& points) {
  std::vector<int> label(points.size());
  for (std::size_t c = 0; c < plan.size(); ++c)
    for (int pos : plan[c]) label[static_cast<std::size_t>(pos - 1)] = static_cast<int>(c);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (label[i] != label[j]) best = std::min(best, euclidean(points[i], points[j]));
  return best;
}

const char* to_string(MetricKind k) noexcept {
  switch (k) {
    case MetricKind::silhouette: return "silhouette";
    case MetricKind::davies_bouldin: return "davies_bouldin";
    case MetricKind::calinski_harabasz: return "calinski_harabasz";
    case MetricKind::gap_statistic: return "gap_statistic";
  }
  return "davies_bouldin";
}

MetricKind parse_metric(std::string_view name) {
  if (name == "silhouette") return MetricKind::silhouette;
  if (name == "davies_bouldin" || name == "db") return MetricKind::davies_bouldin;
  if (name == "calinski_harabasz" || name == "ch") return MetricKind::calinski_harabasz;
  if (name == "gap_statistic" || name == "gap") return MetricKind::gap_statistic;
  fail(ErrorCode::InvalidArgument, "unknown clustering metric '" + std::string(name) + "'");
}

ClusteringConfig default_clustering_config(FloatWidth width) {
  ClusteringConfig cfg;
  if (width.bytes() == 8) {
    cfg.features = FeatureSet::combined;
    cfg.metric.kind = MetricKind::gap_statistic;
  } else {
    cfg.features = FeatureSet::frequency_only;
    cfg.metric.kind = MetricKind::davies_bouldin;
  }
  return cfg;
}

Selection select_clustering_detailed(std::span<const FeatureVector> features, const ClusteringConfig& cfg) {
  const int n = static_cast<int>(features.size());
  if (n < 2) fail(ErrorCode::TooFewGroups, "clustering needs at least two byte groups");
  Selection sel;
  if (n == 2) {
    sel.plan = {{1}, {2}};
    sel.forced = true;
    return sel;
  }
  const Points pts = select_coordinates(features, cfg.features);
  const LinkageMatrix L = single_linkage(pts);
  std::size_t best = 0;
  for (int k = 1; k <= n; ++k) {
    Partition p = cut(L, k);
    const double s = score(p, pts, cfg.metric);
    sel.candidates.push_back({std::move(p), k, s});
    if (s > sel.candidates[best].score) best = sel.candidates.size() - 1;
  }
  if (sel.candidates[best].score == -std::numeric_limits<double>::infinity()) {
    // Nothing was scoreable; fall back to full decomposition.
    sel.plan = sel.candidates.back().plan;
  } else {
    sel.plan = sel.candidates[best].plan;
  }
  return sel;
}

Partition select_clustering(std::span<const FeatureVector> features, const ClusteringConfig& cfg) {
  return select_clustering_detailed(features, cfg).plan;
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  // Enumerate restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i)).
  while (true) {
    int k = 0;
    for (int v : rgs) k = std::max(k, v + 1);
    Partition p(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
    out.push_back(std::move(p));

    int i = n - 1;
    for (; i > 0; --i) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[static_cast<std::size_t>(j)]);
      if (rgs[static_cast<std::size_t>(i)] <= prefix_max) {
        ++rgs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace tdt
