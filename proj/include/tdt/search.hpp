#pragma once

#include <vector>

#include "tdt/pipeline.hpp"

namespace tdt {

struct PartitionResult {
  Partition plan;
  std::size_t compressed_size;
};

struct ExhaustiveResult {
  ClusteringPlan plan;  // best compression ratio; ties go to the earlier partition
  double cr;
  std::vector<PartitionResult> all;  // every set partition, enumeration order
};

/// Compresses `v` with every set partition of its byte positions (B(n) runs)
/// through the pipeline described by `cfg` and keeps the smallest container.
ExhaustiveResult exhaustive_best_clustering(const TypedView& v, const PipelineConfig& cfg);

/// Serialized container size for one plan.
std::size_t compressed_size(const TypedView& v, const PipelineConfig& cfg, const ClusteringPlan& plan);

}  // namespace tdt
