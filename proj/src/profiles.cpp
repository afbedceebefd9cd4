#include "tdt/profiles.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "builtin_profiles.hpp"

namespace tdt {
namespace {

constexpr std::string_view kHeader = "tdt-profiles 1";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

ProfileRegistry ProfileRegistry::parse(std::string_view text) {
  ProfileRegistry reg;
  bool header_seen = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "profiles line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (line != kHeader) fail(ErrorCode::InvalidArgument, where + "expected header '" + std::string(kHeader) + "'");
      header_seen = true;
      continue;
    }
    const auto f = fields(line);
    if (f.size() != 4) fail(ErrorCode::InvalidArgument, where + "expected <category> <width> <plan> <metric>");
    int width = 0;
    const auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), width);
    if (ec != std::errc{} || ptr != f[1].data() + f[1].size()) fail(ErrorCode::InvalidArgument, where + "bad width");
    try {
      const FloatWidth w(width);
      ScoreMetric metric;
      metric.kind = parse_metric(f[3]);
      reg.add({std::string(f[0]), w, ClusteringPlan(w, parse_partition(f[2], width)), metric});
    } catch (const Error& e) {
      fail(e.code(), where + e.what());
    }
  }
  if (!header_seen) fail(ErrorCode::InvalidArgument, "profiles: missing header '" + std::string(kHeader) + "'");
  return reg;
}

ProfileRegistry ProfileRegistry::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open profile file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const ProfileRegistry& ProfileRegistry::builtin() {
  static const ProfileRegistry reg = parse(detail::kBuiltinProfiles);
  return reg;
}

void ProfileRegistry::add(StaticProfile profile) {
  auto key = std::make_pair(profile.category, profile.width.bytes());
  if (profiles_.count(key)) {
    fail(ErrorCode::DuplicateId, "duplicate profile for " + profile.category + " width " + std::to_string(key.second));
  }
  profiles_.emplace(std::move(key), std::move(profile));
}

bool ProfileRegistry::contains(std::string_view category, FloatWidth width) const {
  return profiles_.count({std::string(category), width.bytes()}) != 0;
}

const StaticProfile& ProfileRegistry::lookup(std::string_view category, FloatWidth width) const {
  auto it = profiles_.find({std::string(category), width.bytes()});
  if (it != profiles_.end()) return it->second;
  std::string known;
  for (const auto& [key, p] : profiles_) {
    if (key.second != width.bytes()) continue;
    known += known.empty() ? "" : ", ";
    known += key.first;
  }
  fail(ErrorCode::MissingProfile,
       "no static profile for category '" + std::string(category) + "' at width " + std::to_string(width.bytes()) +
           (known.empty() ? "; no categories exist for this width" : "; available: " + known) +
           ". Use --mode dynamic or supply --profiles");
}

std::vector<const StaticProfile*> ProfileRegistry::all() const {
  std::vector<const StaticProfile*> out;
  for (const auto& [key, p] : profiles_) out.push_back(&p);
  return out;
}

std::string format_profile(const StaticProfile& p) {
  return p.category + " " + std::to_string(p.width.bytes()) + " " + p.plan.to_string() + " " + to_string(p.metric.kind);
}

std::string ProfileRegistry::to_text() const {
  std::string out(kHeader);
  out += '\n';
  for (const auto& [key, p] : profiles_) out += format_profile(p) + '\n';
  return out;
}

}  // namespace tdt
