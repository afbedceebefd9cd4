#include "tdt/search.hpp"

namespace tdt {

std::size_t compressed_size(const TypedView& v, const PipelineConfig& cfg, const ClusteringPlan& plan) {
  return compress_pipeline(v, cfg, plan).serialized_size();
}

ExhaustiveResult exhaustive_best_clustering(const TypedView& v, const PipelineConfig& cfg) {
  const FloatWidth width = v.width();
  ExhaustiveResult result{ClusteringPlan::single_cluster(width, cfg.packing), 0.0, {}};
  std::size_t best = 0;
  for (auto& p : all_partitions(width.bytes())) {
    const ClusteringPlan plan(width, p, cfg.packing);
    const std::size_t size = compressed_size(v, cfg, plan);
    if (result.all.empty() || size < best) {
      best = size;
      result.plan = plan;
    }
    result.all.push_back({std::move(p), size});
  }
  result.cr = static_cast<double>(v.data().size()) / static_cast<double>(best);
  return result;
}

}  // namespace tdt
