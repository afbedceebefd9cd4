#include "tdt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "tdt/analysis.hpp"
#include "tdt/codec.hpp"
#include "tdt/container.hpp"
#include "tdt/pipeline.hpp"
#include "tdt/profiles.hpp"

namespace tdt::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr const char* kEnvWorkers = "TDT_WORKERS";
constexpr const char* kEnvProfiles = "TDT_PROFILE_PATH";
constexpr const char* kEnvConfig = "TDT_CONFIG";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return io_error;
    case ErrorCode::CorruptStream:
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::InconsistentLengths:
    case ErrorCode::WidthMismatch:
    case ErrorCode::LengthNotMultipleOfWidth:
    case ErrorCode::UnknownCodec:
    case ErrorCode::CodecUnavailable:
    case ErrorCode::EmptyInput:
    case ErrorCode::KTooLargeForData:
      return data_error;
    default:
      return usage_error;
  }
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  Bytes data;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size < 0) fail(ErrorCode::IoError, "cannot determine the size of '" + path + "'");
  data.resize(static_cast<std::size_t>(size));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!in) fail(ErrorCode::IoError, "read error on '" + path + "'");
  return data;
}

void write_file(const std::string& path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) fail(ErrorCode::IoError, "write error on '" + path + "'");
}

// `key = value` lines; `#` comments.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::size_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("invalid size '" + text + "'");
  }
  std::string suffix = text.substr(pos);
  std::transform(suffix.begin(), suffix.end(), suffix.begin(), [](unsigned char c) { return std::tolower(c); });
  unsigned long long mult = 1;
  if (suffix == "k" || suffix == "kib") mult = 1024;
  else if (suffix == "m" || suffix == "mib") mult = 1024 * 1024;
  else if (!suffix.empty()) throw UsageError("invalid size suffix in '" + text + "'");
  return static_cast<std::size_t>(v * mult);
}

FloatWidth width_from_extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".f16" || ext == ".fp16") return FloatWidth(2);
  if (ext == ".f32" || ext == ".fp32" || ext == ".float") return FloatWidth(4);
  if (ext == ".f64" || ext == ".fp64" || ext == ".d64" || ext == ".double") return FloatWidth(8);
  throw UsageError("cannot infer the word width of '" + path + "' from its extension; pass --width");
}

FloatWidth parse_width(const std::string& text, const std::string& path) {
  if (text.empty()) throw UsageError("--width is required (2, 4 or 8)");
  if (text == "auto") return width_from_extension(path);
  if (text == "2" || text == "4" || text == "8") return FloatWidth(std::stoi(text));
  throw UsageError("invalid --width '" + text + "' (expected 2, 4, 8 or auto)");
}

CodecId resolve_codec(const std::string& name) {
  const auto& reg = CodecRegistry::global();
  try {
    return reg.id_of(name);
  } catch (const Error&) {
    std::string known;
    for (CodecId id : reg.ids()) known += (known.empty() ? "" : ", ") + reg.name_of(id);
    throw UsageError(std::string(to_string(ErrorCode::UnknownCodec)) + ": codec '" + name +
                     "' is not available in this build (available: " + known + ")");
  }
}

std::string format_score(double s) {
  if (std::isinf(s)) return s < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

// Options shared by every subcommand that builds a PipelineConfig.
struct PipelineOptions {
  std::string width;
  std::string codec = "lz77";
  std::string mode = "dynamic";
  std::string category;
  std::string block_size = "256K";
  std::string packing = "same_byte";
  double sample_fraction = 0.30;
  std::string metric;
  std::string features;
  std::size_t entropy_block_size = 65536;
  std::size_t lz77_window = 65536;
  int lz77_min_match = 4;
  bool lz77_lazy = false;
  int level = 0;

  void attach(CLI::App* app, bool with_codec) {
    app->add_option("--width,-w", width, "Word width in bytes: 2, 4, 8 or auto (from the file extension)");
    app->add_option("--mode", mode, "Clustering mode: static or dynamic");
    app->add_option("--category", category, "Application category for static mode (e.g. HPC, TS, OBS, DB, ML)");
    app->add_option("--block-size", block_size, "Block size in bytes (suffix K or M), or auto");
    app->add_option("--packing", packing, "same_byte or same_value");
    app->add_option("--sample-fraction", sample_fraction, "Fraction of the data sampled in dynamic mode");
    app->add_option("--metric", metric, "silhouette, davies_bouldin, calinski_harabasz or gap_statistic");
    app->add_option("--features", features, "entropy_only, frequency_only or combined");
    app->add_option("--entropy-block-size", entropy_block_size, "Bytes per block entropy window");
    if (!with_codec) return;
    app->add_option("--codec,-c", codec, "Codec name (store, lz77, huffman, xor_delta, or a loaded external codec)");
    app->add_option("--lz77-window", lz77_window, "LZ77 window in bytes (power of two, 256..65536)");
    app->add_option("--lz77-min-match", lz77_min_match, "Shortest LZ77 match length");
    app->add_flag("--lz77-lazy", lz77_lazy, "One-step lazy LZ77 matching");
    app->add_option("--level", level, "Compression level for external codecs (0 = library default)");
  }

  PipelineConfig build(FloatWidth w, int workers, std::size_t data_size) const {
    PipelineConfig cfg;
    cfg.codec = resolve_codec(codec);
    cfg.mode = parse_mode(mode);
    cfg.category = category;
    cfg.packing = parse_packing(packing);
    cfg.sample_fraction = sample_fraction;
    cfg.worker_count = workers;
    if (!metric.empty()) cfg.metric = ScoreMetric{parse_metric(metric)};
    if (!features.empty()) cfg.feature_set = parse_feature_set(features);
    cfg.feature_cfg.entropy_block_size = entropy_block_size;
    cfg.params.lz77_window = lz77_window;
    cfg.params.lz77_min_match = lz77_min_match;
    cfg.params.lz77_lazy = lz77_lazy;
    cfg.params.level = level;
    if (block_size == "auto") {
      cfg.block_size = effective_block_size(cfg.block_size, data_size, workers, w);
    } else {
      cfg.block_size = parse_size(block_size);
    }
    validate(cfg, w);
    return cfg;
  }
};

struct Globals {
  std::string config;
  std::string profiles;
  int workers = 0;
  int verbosity = 0;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Typed Data Transformation: byte-clustering compression for floating-point data", "tdt"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "tdt 1.0.0");
    app.add_option("--config", g_.config, "Config file of 'key = value' lines (env TDT_CONFIG)")->envname(kEnvConfig);
    app.add_option("--profiles", g_.profiles, "Static profile file (env TDT_PROFILE_PATH)")->envname(kEnvProfiles);
    app.add_option("--workers,-j", g_.workers, "Worker threads (env TDT_WORKERS); never changes output bytes")
        ->envname(kEnvWorkers);
    app.add_flag("-v,--verbose", g_.verbosity, "More diagnostics on stderr");

    auto* compress = app.add_subcommand("compress", "Raw float file to container");
    PipelineOptions c_opts;
    std::string c_in, c_out, c_plan;
    bool allow_tail = false;
    c_opts.attach(compress, true);
    compress->add_option("--plan", c_plan, "Explicit plan such as {1,2}|{3}|{4}; overrides --mode");
    compress->add_flag("--allow-tail", allow_tail, "Store a trailing partial word uncompressed instead of failing");
    compress->add_option("input", c_in, "Raw input file")->required();
    compress->add_option("output", c_out, "Container to write")->required();

    auto* decompress = app.add_subcommand("decompress", "Container to raw float file");
    std::string d_in, d_out;
    decompress->add_option("input", d_in, "Container file")->required();
    decompress->add_option("output", d_out, "Raw output file")->required();

    auto* analyze = app.add_subcommand("analyze", "Entropy profile and order-k entropies");
    PipelineOptions a_opts;
    std::string a_in;
    int max_k = 4;
    bool a_json = false;
    a_opts.attach(analyze, false);
    analyze->add_option("--max-k", max_k, "Highest order k reported");
    analyze->add_flag("--json", a_json, "Emit one JSON record instead of text");
    analyze->add_option("input", a_in, "Raw input file")->required();

    auto* plan = app.add_subcommand("plan", "Print the clustering plan and per-candidate scores");
    PipelineOptions p_opts;
    std::string p_in, profile_line;
    p_opts.attach(plan, false);
    plan->add_option("--profile-line", profile_line, "Print a profile registry line for this category");
    plan->add_option("input", p_in, "Raw input file")->required();

    auto* bench = app.add_subcommand("bench", "Codec x mode matrix over a dataset directory");
    PipelineOptions b_opts;
    std::string b_dir, b_codecs = "lz77,huffman,xor_delta", b_modes = "dynamic", b_records;
    bool b_json = false;
    b_opts.attach(bench, true);
    bench->add_option("--codecs", b_codecs, "Comma-separated codec names");
    bench->add_option("--modes", b_modes, "Comma-separated modes (dynamic, static)");
    bench->add_option("--records", b_records, "Write JSON-lines records to this file");
    bench->add_flag("--json", b_json, "Print JSON-lines records instead of the table");
    bench->add_option("directory", b_dir, "Directory of raw float files")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out_, err_) == 0 ? ok : usage_error;
    }

    try {
      apply_config(app);
      if (g_.workers < 0) throw UsageError("--workers must be at least 1");
      if (g_.workers == 0) g_.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      if (compress->parsed()) return run_compress(c_opts, c_in, c_out, c_plan, allow_tail);
      if (decompress->parsed()) return run_decompress(d_in, d_out);
      if (analyze->parsed()) return run_analyze(a_opts, a_in, max_k, a_json);
      if (plan->parsed()) return run_plan(p_opts, p_in, profile_line);
      return run_bench(b_opts, b_dir, b_codecs, b_modes, b_records, b_json);
    } catch (const UsageError& e) {
      err_ << "tdt: " << e.what() << '\n';
      return usage_error;
    } catch (const CLI::ParseError& e) {
      err_ << "tdt: " << e.what() << '\n';
      return usage_error;
    } catch (const Error& e) {
      err_ << "tdt: " << e.what() << '\n';
      return exit_code_for(e.code());
    } catch (const std::bad_alloc&) {
      err_ << "tdt: out of memory\n";
      return data_error;
    } catch (const fs::filesystem_error& e) {
      err_ << "tdt: " << e.what() << '\n';
      return io_error;
    }
  }

 private:
  // Config values fill only options that neither the command line nor the
  // environment set, so flags win over env, which wins over the file.
  void apply_config(CLI::App& app) {
    if (g_.config.empty()) return;
    const auto kv = read_config(g_.config);
    CLI::App* active = app.get_subcommands().front();
    for (const auto& [key, value] : kv) {
      CLI::Option* opt = find_option(*active, key);
      if (!opt) opt = find_option(app, key);
      if (!opt) {
        if (!known_anywhere(app, key)) throw UsageError(g_.config + ": unknown key '" + key + "'");
        continue;
      }
      if (opt->count() > 0 || key == "config") continue;
      opt->add_result(value);
      opt->run_callback();
    }
  }

  static CLI::Option* find_option(CLI::App& app, const std::string& key) {
    for (CLI::Option* opt : app.get_options()) {
      const auto& names = opt->get_lnames();
      if (std::find(names.begin(), names.end(), key) != names.end()) return opt;
    }
    return nullptr;
  }

  static bool known_anywhere(CLI::App& app, const std::string& key) {
    if (find_option(app, key)) return true;
    for (CLI::App* sub : app.get_subcommands({})) {
      if (find_option(*sub, key)) return true;
    }
    return false;
  }

  void note(const std::string& msg) {
    if (g_.verbosity > 0) err_ << "tdt: " << msg << '\n';
  }

  const ProfileRegistry& profiles() {
    if (g_.profiles.empty()) return ProfileRegistry::builtin();
    if (!loaded_profiles_) loaded_profiles_ = ProfileRegistry::load(g_.profiles);
    return *loaded_profiles_;
  }

  int run_compress(const PipelineOptions& o, const std::string& in, const std::string& out, const std::string& plan_text,
                   bool allow_tail) {
    const FloatWidth w = parse_width(o.width, in);
    const Bytes data = read_file(in);
    const std::size_t w_bytes = static_cast<std::size_t>(w.bytes());
    const std::size_t body = data.size() / w_bytes * w_bytes;
    if (body != data.size() && !allow_tail) {
      fail(ErrorCode::LengthNotMultipleOfWidth, "'" + in + "' is " + std::to_string(data.size()) +
                                                    " bytes, not a multiple of width " + std::to_string(w_bytes) +
                                                    " (use --allow-tail to store the remainder raw)");
    }
    const TypedView v(ByteSpan(data).first(body), w);
    const PipelineConfig cfg = o.build(w, g_.workers, body);
    const ClusteringPlan plan = plan_text.empty() ? plan_for(v, cfg, profiles())
                                                  : ClusteringPlan(w, parse_partition(plan_text, w.bytes()), cfg.packing);
    const auto t0 = Clock::now();
    const Container c = compress_pipeline(v, cfg, plan, ByteSpan(data).subspan(body));
    const Bytes bytes = serialize(c);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    write_file(out, bytes);
    note("plan " + plan.to_string() + ", codec " + CodecRegistry::global().name_of(cfg.codec) + ", " +
         std::to_string(c.block_count()) + " blocks of " + std::to_string(cfg.block_size) + " bytes");
    RatioReport r = report(std::max<std::size_t>(data.size(), 1), bytes.size());
    if (secs > 0) r.ct = static_cast<double>(data.size()) / secs;
    note(to_text_line(r));
    return ok;
  }

  int run_decompress(const std::string& in, const std::string& out) {
    const Bytes data = read_file(in);
    const Container c = parse_container(data);
    const Bytes raw = decompress_pipeline(c, g_.workers);
    write_file(out, raw);
    note("restored " + std::to_string(raw.size()) + " bytes, width " + std::to_string(c.width().bytes()));
    return ok;
  }

  int run_analyze(const PipelineOptions& o, const std::string& in, int max_k, bool json) {
    if (max_k < 0) throw UsageError("--max-k must be non-negative");
    const FloatWidth w = parse_width(o.width, in);
    const Bytes data = read_file(in);
    const TypedView v = view(data, w);
    FeatureConfig fcfg;
    fcfg.entropy_block_size = o.entropy_block_size;
    if (fcfg.entropy_block_size < 1) throw UsageError("--entropy-block-size must be at least 1");
    const EntropyProfile prof = entropy_profile(v, fcfg);
    std::vector<std::pair<int, double>> hk;
    for (int k = 0; k <= max_k && static_cast<std::size_t>(k) < data.size(); ++k) hk.emplace_back(k, order_k_entropy(data, k));
    if (json) {
      nlohmann::ordered_json j;
      j["file"] = in;
      j["width"] = w.bytes();
      j["size"] = data.size();
      j["dataset_entropy"] = prof.dataset_entropy;
      j["groups"] = nlohmann::ordered_json::array();
      for (const auto& g : prof.per_group) {
        j["groups"].push_back({{"position", g.position}, {"avg_entropy", g.avg_entropy}, {"whole_entropy", g.whole_entropy}});
      }
      j["order_k"] = nlohmann::ordered_json::array();
      for (const auto& [k, h] : hk) j["order_k"].push_back({{"k", k}, {"h", h}});
      out_ << j.dump() << '\n';
      return ok;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "dataset_entropy %.6f\n", prof.dataset_entropy);
    out_ << buf << "position avg_entropy whole_entropy\n";
    for (const auto& g : prof.per_group) {
      std::snprintf(buf, sizeof buf, "%d %.6f %.6f\n", g.position, g.avg_entropy, g.whole_entropy);
      out_ << buf;
    }
    for (const auto& [k, h] : hk) {
      std::snprintf(buf, sizeof buf, "H%d %.6f\n", k, h);
      out_ << buf;
    }
    return ok;
  }

  int run_plan(const PipelineOptions& o, const std::string& in, const std::string& profile_line) {
    const FloatWidth w = parse_width(o.width, in);
    const Bytes data = read_file(in);
    const TypedView v = view(data, w);
    PipelineOptions opts = o;
    const PipelineConfig cfg = opts.build(w, g_.workers, data.size());
    const ClusteringConfig ccfg = clustering_config(cfg, w);

    if (!profile_line.empty()) {
      PipelineConfig dyn = cfg;
      dyn.mode = Mode::dynamic;
      out_ << format_profile({profile_line, w, plan_for(v, dyn), ccfg.metric}) << '\n';
      return ok;
    }
    if (cfg.mode == Mode::static_profile || w.bytes() == 2 || v.empty()) {
      const ClusteringPlan p = plan_for(v, cfg, profiles());
      out_ << p.to_string() << '\n';
      if (w.bytes() == 2) out_ << "source: half precision, two singletons\n";
      else if (cfg.mode == Mode::static_profile) out_ << "source: static profile " << cfg.category << "/" << w.bytes() << '\n';
      return ok;
    }
    const Selection sel = plan_details(v, cfg);
    out_ << format_partition(sel.plan) << '\n';
    out_ << "metric " << to_string(ccfg.metric.kind) << ", features " << to_string(ccfg.features) << '\n';
    for (const auto& c : sel.candidates) {
      out_ << "k=" << c.k << ' ' << format_partition(c.plan) << " score=" << format_score(c.score) << '\n';
    }
    return ok;
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  int run_bench(const PipelineOptions& o, const std::string& dir, const std::string& codecs, const std::string& modes,
                const std::string& records_path, bool json) {
    if (!fs::is_directory(dir)) fail(ErrorCode::IoError, "'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    const auto codec_list = split_list(codecs);
    const auto mode_list = split_list(modes);
    if (codec_list.empty() || mode_list.empty()) throw UsageError("--codecs and --modes must not be empty");
    for (const auto& name : codec_list) resolve_codec(name);

    std::optional<std::ofstream> records;
    if (!records_path.empty()) {
      records.emplace(records_path, std::ios::trunc);
      if (!*records) fail(ErrorCode::IoError, "cannot open '" + records_path + "' for writing");
    }
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> summary;
    if (!json) out_ << "dataset codec mode plan CR baseline_CR CRI CT_MB/s DT_MB/s\n";
    for (const auto& file : files) {
      const FloatWidth w = parse_width(o.width.empty() ? "auto" : o.width, file.string());
      const Bytes data = read_file(file.string());
      const std::size_t body = data.size() / static_cast<std::size_t>(w.bytes()) * static_cast<std::size_t>(w.bytes());
      if (body == 0) continue;
      const TypedView v(ByteSpan(data).first(body), w);
      const ByteSpan tail = ByteSpan(data).subspan(body);
      for (const auto& codec : codec_list) {
        for (const auto& mode : mode_list) {
          PipelineOptions opts = o;
          opts.codec = codec;
          opts.mode = mode;
          const PipelineConfig cfg = opts.build(w, g_.workers, body);
          const ClusteringPlan plan = plan_for(v, cfg, profiles());
          auto t0 = Clock::now();
          const Bytes packed = serialize(compress_pipeline(v, cfg, plan, tail));
          const double ct = std::chrono::duration<double>(Clock::now() - t0).count();
          t0 = Clock::now();
          const Bytes back = decompress_pipeline(packed, g_.workers);
          const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
          if (back != data) fail(ErrorCode::CorruptStream, "round trip mismatch on " + file.string());
          const ClusteringPlan standard = ClusteringPlan::single_cluster(w, Packing::same_value);
          const std::size_t base = serialize(compress_pipeline(v, cfg, standard, tail)).size();
          RatioReport r = report(data.size(), packed.size(), base);
          if (ct > 0) r.ct = static_cast<double>(data.size()) / ct;
          if (dt > 0) r.dt = static_cast<double>(data.size()) / dt;
          summary[{codec, mode}].emplace_back(r.cr, *r.cri);
          const std::map<std::string, std::string> labels{{"dataset", file.filename().string()},
                                                          {"codec", codec},
                                                          {"mode", mode},
                                                          {"plan", plan.to_string()},
                                                          {"width", std::to_string(w.bytes())}};
          const std::string rec = to_json_line(r, labels);
          if (records) *records << rec << '\n';
          if (json) {
            out_ << rec << '\n';
          } else {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s %s %s %s %.4f %.4f %.4f %.1f %.1f\n", file.filename().string().c_str(),
                          codec.c_str(), mode.c_str(), plan.to_string().c_str(), r.cr, *r.baseline_cr, *r.cri,
                          r.ct.value_or(0) / 1e6, r.dt.value_or(0) / 1e6);
            out_ << buf;
          }
        }
      }
    }
    if (!json) {
      for (const auto& [key, rows] : summary) {
        std::vector<double> crs, cris;
        for (const auto& [cr, cri] : rows) {
          crs.push_back(cr);
          cris.push_back(cri);
        }
        char buf[256];
        std::snprintf(buf, sizeof buf, "GMean %s %s CR=%.4f CRI=%.4f (%zu datasets)\n", key.first.c_str(), key.second.c_str(),
                      geometric_mean(crs), geometric_mean(cris), rows.size());
        out_ << buf;
      }
    }
    return ok;
  }

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  std::optional<ProfileRegistry> loaded_profiles_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tdt::cli
