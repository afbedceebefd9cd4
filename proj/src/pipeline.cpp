#include "tdt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <thread>

#include "tdt/transform.hpp"

namespace tdt {
namespace {

// Run `work(begin, end)` over contiguous block ranges, one thread each. When several
// workers fail, the error from the lowest block range wins so diagnostics do
// not depend on scheduling.
template <typename Work>
void run_workers(std::uint32_t block_count, int worker_count, Work&& work) {
  const auto ranges = assign_blocks(block_count, worker_count);
  if (ranges.size() <= 1) {
    for (const auto& [b, e] : ranges) work(std::size_t{0}, b, e);
    return;
  }
  std::vector<std::exception_ptr> errors(ranges.size());
  std::vector<std::thread> threads;
  threads.reserve(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    threads.emplace_back([&, w] {
      try {
        work(w, ranges[w].first, ranges[w].second);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

CodecParams stream_params(const PipelineConfig& cfg, const ClusteringPlan& plan, int cluster) {
  CodecParams p = cfg.params;
  // XOR words follow the cluster so every stream length divides evenly.
  p.xor_word_width = static_cast<int>(plan.clusters()[static_cast<std::size_t>(cluster)].size());
  return p;
}

struct WorkerOutput {
  Bytes payload;
  std::vector<StreamEntry> entries;
};

}  // namespace

const char* to_string(Mode m) noexcept { return m == Mode::dynamic ? "dynamic" : "static"; }

Mode parse_mode(std::string_view name) {
  if (name == "dynamic") return Mode::dynamic;
  if (name == "static") return Mode::static_profile;
  fail(ErrorCode::InvalidArgument, "unknown mode '" + std::string(name) + "' (expected static or dynamic)");
}

void validate(const PipelineConfig& cfg, FloatWidth width) {
  const auto w = static_cast<std::size_t>(width.bytes());
  if (cfg.block_size == 0 || cfg.block_size % w != 0) {
    fail(ErrorCode::InvalidArgument, "block size " + std::to_string(cfg.block_size) + " is not a positive multiple of the word width " +
                                         std::to_string(w));
  }
  if (cfg.block_size > kMaxBlockSize) fail(ErrorCode::InvalidArgument, "block size exceeds 1 GiB");
  if (cfg.worker_count < 1) fail(ErrorCode::InvalidArgument, "worker count must be at least 1");
  if (!(cfg.sample_fraction > 0.0 && cfg.sample_fraction <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "sample fraction must be in (0, 1]");
  }
  if (cfg.feature_cfg.entropy_block_size < 1) fail(ErrorCode::InvalidArgument, "entropy block size must be at least 1");
  if (cfg.metric && cfg.metric->kind == MetricKind::gap_statistic && cfg.metric->gap_reference_draws < 1) {
    fail(ErrorCode::InvalidArgument, "gap statistic needs at least one reference draw");
  }
  validate(cfg.params);
}

ClusteringConfig clustering_config(const PipelineConfig& cfg, FloatWidth width) {
  ClusteringConfig c = default_clustering_config(width);
  if (cfg.metric) c.metric = *cfg.metric;
  if (cfg.feature_set) c.features = *cfg.feature_set;
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_ranges(const TypedView& v, std::size_t block_size,
                                                               double fraction) {
  const std::size_t total = v.data().size();
  if (total == 0) return {};
  if (fraction >= 1.0) return {{0, total}};
  const auto w = static_cast<std::size_t>(v.width().bytes());
  // At least 1024 units, so the stride spans small datasets too.
  const std::size_t unit = std::max(w, std::min(block_size, total / 1024 / w * w));
  const std::size_t units = (total + unit - 1) / unit;
  const auto m = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(units))), 1, units);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t u = i * units / m;
    out.emplace_back(u * unit, std::min(total, (u + 1) * unit));
  }
  return out;
}

Selection plan_details(const TypedView& v, const PipelineConfig& cfg) {
  validate(cfg, v.width());
  if (v.empty()) fail(ErrorCode::EmptyInput, "cannot cluster an empty dataset");
  const auto ranges = sample_ranges(v, cfg.block_size, cfg.sample_fraction);
  Bytes sample;
  const bool whole = ranges.size() == 1 && ranges[0].first == 0 && ranges[0].second == v.data().size();
  if (!whole) {
    for (const auto& [b, e] : ranges) sample.insert(sample.end(), v.data().begin() + static_cast<std::ptrdiff_t>(b),
                                                   v.data().begin() + static_cast<std::ptrdiff_t>(e));
  }
  const TypedView sv = whole ? v : TypedView(sample, v.width());
  const ClusteringConfig ccfg = clustering_config(cfg, v.width());
  FeatureConfig fcfg = cfg.feature_cfg;
  fcfg.feature_set = ccfg.features;
  const auto features = extract_features(sv, fcfg);
  return select_clustering_detailed(features, ccfg);
}

ClusteringPlan plan_for(const TypedView& v, const PipelineConfig& cfg, const ProfileRegistry& profiles) {
  validate(cfg, v.width());
  if (v.width().bytes() == 2) return ClusteringPlan::singletons(v.width(), cfg.packing);
  if (cfg.mode == Mode::static_profile) {
    if (cfg.category.empty()) fail(ErrorCode::MissingProfile, "static mode needs an application category (--category)");
    return profiles.lookup(cfg.category, v.width()).plan.with_packing(cfg.packing);
  }
  if (v.empty()) return ClusteringPlan::single_cluster(v.width(), cfg.packing);
  return ClusteringPlan(v.width(), plan_details(v, cfg).plan, cfg.packing);
}

std::size_t effective_block_size(std::size_t block_size, std::size_t dataset_size, int worker_count,
                                 FloatWidth width) {
  const auto w = static_cast<std::size_t>(width.bytes());
  const auto workers = static_cast<std::size_t>(std::max(worker_count, 1));
  if (dataset_size == 0 || block_size == 0) return block_size;
  if ((dataset_size + block_size - 1) / block_size >= workers) return block_size;
  return std::max(w, dataset_size / workers / w * w);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> assign_blocks(std::uint32_t block_count, int worker_count) {
  const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(worker_count, 1)), block_count);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint64_t w = 0; w < workers; ++w) {
    out.emplace_back(static_cast<std::uint32_t>(w * block_count / workers),
                     static_cast<std::uint32_t>((w + 1) * block_count / workers));
  }
  return out;
}

Container compress_pipeline(const TypedView& v, const PipelineConfig& cfg, const ClusteringPlan& plan, ByteSpan tail) {
  validate(cfg, v.width());
  if (plan.width() != v.width()) {
    fail(ErrorCode::WidthMismatch, "plan is for width " + std::to_string(plan.width().bytes()) + " but data has width " +
                                       std::to_string(v.width().bytes()));
  }
  if (tail.size() >= static_cast<std::size_t>(v.width().bytes())) fail(ErrorCode::InvalidArgument, "tail must be shorter than one word");
  const CodecAdapter& codec = CodecRegistry::global().get(cfg.codec);

  Container c(plan);
  c.codec = cfg.codec;
  c.block_size = static_cast<std::uint32_t>(cfg.block_size);
  c.value_count = v.value_count();
  c.tail.assign(tail.begin(), tail.end());
  const std::uint32_t blocks = c.block_count();
  const std::size_t per_block = cfg.block_size / static_cast<std::size_t>(v.width().bytes());
  const int k = plan.cluster_count();

  std::vector<WorkerOutput> out(assign_blocks(blocks, cfg.worker_count).size());
  run_workers(blocks, cfg.worker_count, [&](std::size_t worker, std::uint32_t begin, std::uint32_t end) {
    std::vector<Bytes> raw;
    Bytes scratch;
    WorkerOutput& wo = out[worker];
    wo.entries.reserve(static_cast<std::size_t>(end - begin) * static_cast<std::size_t>(k));
    for (std::uint32_t b = begin; b < end; ++b) {
      const std::size_t first = static_cast<std::size_t>(b) * per_block;
      pack_into(v.values(first, std::min(per_block, v.value_count() - first)), plan, raw, scratch);
      for (int cl = 0; cl < k; ++cl) {
        const auto ci = static_cast<std::size_t>(cl);
        Bytes packed;
        try {
          packed = codec.compress(raw[ci], stream_params(cfg, plan, cl));
        } catch (const Error& e) {
          fail(e.code(), "block " + std::to_string(b) + ", cluster " + std::to_string(cl) + ": " + e.what());
        }
        StreamEntry entry;
        entry.stored = packed.size() > raw[ci].size();
        const ByteSpan written = entry.stored ? ByteSpan(raw[ci]) : ByteSpan(packed);
        entry.length = static_cast<std::uint32_t>(written.size());
        entry.crc = crc32(written);
        wo.payload.insert(wo.payload.end(), written.begin(), written.end());
        wo.entries.push_back(entry);
      }
    }
  });

  std::size_t total = 0;
  for (const auto& wo : out) total += wo.payload.size();
  c.payload.reserve(total);
  c.entries.reserve(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(k));
  for (auto& wo : out) {
    c.payload.insert(c.payload.end(), wo.payload.begin(), wo.payload.end());
    c.entries.insert(c.entries.end(), wo.entries.begin(), wo.entries.end());
    wo.payload = {};
  }
  c.index_offsets();
  return c;
}

Bytes decode_stream(const Container& c, std::uint32_t block, int cluster) {
  const StreamEntry& e = c.entry(block, cluster);
  const ByteSpan data = c.stream(block, cluster);
  const std::size_t expected = stream_length(c.plan, cluster, c.values_in_block(block));
  if (crc32(data) != e.crc) throw CorruptStreamError(block, static_cast<std::uint32_t>(cluster), "checksum mismatch");
  if (e.stored) {
    if (data.size() != expected) throw CorruptStreamError(block, static_cast<std::uint32_t>(cluster), "stored stream has wrong length");
    return Bytes(data.begin(), data.end());
  }
  Bytes out;
  try {
    out = CodecRegistry::global().decompress(c.codec, data, expected);
  } catch (const CorruptStreamError&) {
    throw;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::CorruptStream) throw;
    throw CorruptStreamError(block, static_cast<std::uint32_t>(cluster), err.what());
  }
  if (out.size() != expected) {
    throw CorruptStreamError(block, static_cast<std::uint32_t>(cluster),
                             "decoded " + std::to_string(out.size()) + " bytes, expected " + std::to_string(expected));
  }
  return out;
}

Bytes decompress_pipeline(const Container& c, int worker_count) {
  const bool needs_codec = std::any_of(c.entries.begin(), c.entries.end(), [](const StreamEntry& e) { return !e.stored; });
  if (needs_codec && !CodecRegistry::global().contains(c.codec)) {
    fail(ErrorCode::UnknownCodec, "container uses codec id " + std::to_string(c.codec) + ", which is not available in this build");
  }
  const auto w = static_cast<std::size_t>(c.width().bytes());
  const std::size_t body = static_cast<std::size_t>(c.value_count) * w;
  Bytes out(body + c.tail.size());
  const std::uint32_t blocks = c.block_count();
  const std::size_t per_block = c.block_size / w;
  const int k = c.plan.cluster_count();
  run_workers(blocks, std::max(worker_count, 1), [&](std::size_t, std::uint32_t begin, std::uint32_t end) {
    std::vector<Bytes> streams(static_cast<std::size_t>(k));
    std::vector<ByteSpan> spans(static_cast<std::size_t>(k));
    Bytes scratch;
    for (std::uint32_t b = begin; b < end; ++b) {
      for (int cl = 0; cl < k; ++cl) {
        streams[static_cast<std::size_t>(cl)] = decode_stream(c, b, cl);
        spans[static_cast<std::size_t>(cl)] = streams[static_cast<std::size_t>(cl)];
      }
      const std::size_t count = c.values_in_block(b);
      unpack_into(spans, c.plan, count, std::span<std::uint8_t>(out).subspan(static_cast<std::size_t>(b) * per_block * w, count * w),
                  scratch);
    }
  });
  std::copy(c.tail.begin(), c.tail.end(), out.begin() + static_cast<std::ptrdiff_t>(body));
  return out;
}

Bytes decompress_pipeline(ByteSpan container_bytes, int worker_count) {
  return decompress_pipeline(parse_container(container_bytes), worker_count);
}

}  // namespace tdt
