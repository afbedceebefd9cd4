// Straight-from-definition reference computations. Deliberately slow and
// independent of the library's own code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using ByteVec = std::vector<std::uint8_t>;
using Vec = std::vector<double>;
using Groups = std::vector<std::vector<int>>;  // 1-based positions

inline double shannon(const ByteVec& bytes) {
  std::map<std::uint8_t, std::size_t> count;
  for (auto b : bytes) ++count[b];
  double h = 0.0;
  const double n = static_cast<double>(bytes.size());
  for (const auto& [sym, c] : count) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

struct Features {
  double avg, sd, max, min;
  std::vector<double> freq;
};

inline Features features(const ByteVec& group, std::size_t block) {
  std::vector<double> hs;
  for (std::size_t at = 0; at < group.size(); at += block) {
    const std::size_t end = std::min(group.size(), at + block);
    hs.push_back(shannon(ByteVec(group.begin() + static_cast<long>(at), group.begin() + static_cast<long>(end))));
  }
  Features f{};
  double sum = 0.0;
  for (double h : hs) sum += h;
  f.avg = sum / static_cast<double>(hs.size());
  double ss = 0.0;
  for (double h : hs) ss += (h - f.avg) * (h - f.avg);
  f.sd = hs.size() > 1 ? std::sqrt(ss / static_cast<double>(hs.size() - 1)) : 0.0;
  f.max = *std::max_element(hs.begin(), hs.end());
  f.min = *std::min_element(hs.begin(), hs.end());
  f.freq.assign(256, 0.0);
  for (auto b : group) f.freq[b] += 1.0;
  for (auto& x : f.freq) x /= static_cast<double>(group.size());
  return f;
}

// (1/N) * sum over contexts of |next| * H0(next)
inline double order_k(const ByteVec& data, int k) {
  std::map<std::string, std::map<std::uint8_t, std::size_t>> next;
  for (std::size_t i = static_cast<std::size_t>(k); i < data.size(); ++i) {
    std::string ctx(data.begin() + static_cast<long>(i) - k, data.begin() + static_cast<long>(i));
    ++next[ctx][data[i]];
  }
  double total = 0.0;
  for (const auto& [ctx, hist] : next) {
    double n = 0.0;
    for (const auto& [s, c] : hist) n += static_cast<double>(c);
    for (const auto& [s, c] : hist) total -= static_cast<double>(c) * std::log2(static_cast<double>(c) / n);
  }
  return total / static_cast<double>(data.size());
}

inline double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline std::vector<int> labels(const Groups& g, std::size_t n) {
  std::vector<int> l(n);
  for (std::size_t c = 0; c < g.size(); ++c)
    for (int p : g[c]) l[static_cast<std::size_t>(p - 1)] = static_cast<int>(c);
  return l;
}

inline std::vector<Vec> centroids(const Groups& g, const std::vector<Vec>& x) {
  std::vector<Vec> c;
  for (const auto& members : g) {
    Vec m(x[0].size(), 0.0);
    for (int p : members)
      for (std::size_t d = 0; d < m.size(); ++d) m[d] += x[static_cast<std::size_t>(p - 1)][d];
    for (auto& v : m) v /= static_cast<double>(members.size());
    c.push_back(m);
  }
  return c;
}

// Rousseeuw: s(i) = (b - a) / max(a, b), s(i) = 0 for singletons.
inline double silhouette(const Groups& g, const std::vector<Vec>& x) {
  const auto lab = labels(g, x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& own = g[static_cast<std::size_t>(lab[i])];
    if (own.size() == 1) continue;
    double a = 0.0;
    for (int p : own)
      if (static_cast<std::size_t>(p - 1) != i) a += dist(x[i], x[static_cast<std::size_t>(p - 1)]);
    a /= static_cast<double>(own.size() - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (static_cast<int>(c) == lab[i]) continue;
      double s = 0.0;
      for (int p : g[c]) s += dist(x[i], x[static_cast<std::size_t>(p - 1)]);
      b = std::min(b, s / static_cast<double>(g[c].size()));
    }
    if (std::max(a, b) > 0) total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(x.size());
}

inline double davies_bouldin(const Groups& g, const std::vector<Vec>& x) {
  const auto c = centroids(g, x);
  std::vector<double> s(g.size(), 0.0);
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (int p : g[r]) s[r] += dist(x[static_cast<std::size_t>(p - 1)], c[r]);
    s[r] /= static_cast<double>(g[r].size());
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < g.size(); ++r) {
    double worst = 0.0;
    for (std::size_t q = 0; q < g.size(); ++q)
      if (q != r && dist(c[r], c[q]) > 0) worst = std::max(worst, (s[r] + s[q]) / dist(c[r], c[q]));
    sum += worst;
  }
  return sum / static_cast<double>(g.size());
}

inline double calinski_harabasz(const Groups& g, const std::vector<Vec>& x) {
  const auto c = centroids(g, x);
  Vec mean(x[0].size(), 0.0);
  for (const auto& p : x)
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += p[d] / static_cast<double>(x.size());
  double between = 0.0, within = 0.0;
  for (std::size_t r = 0; r < g.size(); ++r) {
    between += static_cast<double>(g[r].size()) * std::pow(dist(c[r], mean), 2);
    for (int p : g[r]) within += std::pow(dist(x[static_cast<std::size_t>(p - 1)], c[r]), 2);
  }
  const double k = static_cast<double>(g.size()), n = static_cast<double>(x.size());
  return (between / (k - 1)) / (within / (n - k));
}

inline double min_spacing(const Groups& g, const std::vector<Vec>& x) {
  const auto lab = labels(g, x.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (lab[i] != lab[j]) best = std::min(best, dist(x[i], x[j]));
  return best;
}

// Every partition of {1..n} into exactly k blocks.
inline void k_partitions(int n, int k, std::vector<Groups>& out, Groups cur = {}, int next = 1) {
  if (next > n) {
    if (static_cast<int>(cur.size()) == k) out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) + (n - next + 1) < k) return;
  for (std::size_t c = 0; c < cur.size(); ++c) {
    cur[c].push_back(next);
    k_partitions(n, k, out, cur, next + 1);
    cur[c].pop_back();
  }
  if (static_cast<int>(cur.size()) < k) {
    cur.push_back({next});
    k_partitions(n, k, out, cur, next + 1);
  }
}

inline double best_spacing(const std::vector<Vec>& x, int k) {
  std::vector<Groups> parts;
  k_partitions(static_cast<int>(x.size()), k, parts);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) best = std::max(best, min_spacing(p, x));
  return best;
}

inline ByteVec random_bytes(std::size_t n, std::uint64_t seed, int alphabet = 256) {
  std::mt19937_64 rng(seed);
  ByteVec v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(alphabet));
  return v;
}

}  // namespace oracle
