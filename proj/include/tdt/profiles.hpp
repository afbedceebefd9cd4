#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdt/clustering.hpp"
#include "tdt/typed.hpp"

namespace tdt {

/// Pre-profiled clustering for one application category and word width.
struct StaticProfile {
  std::string category;
  FloatWidth width;
  ClusteringPlan plan;
  ScoreMetric metric;
};

/// Profiles keyed by (category, width). Text format, one profile per line
/// after the `tdt-profiles 1` header:
///   <category> <width> <plan> <metric>
/// `#` starts a comment; blank lines are ignored.
class ProfileRegistry {
 public:
  static ProfileRegistry parse(std::string_view text);
  static ProfileRegistry load(const std::string& path);
  /// The profiles shipped with the library.
  static const ProfileRegistry& builtin();

  void add(StaticProfile profile);
  /// Throws MissingProfile listing the categories that do exist for `width`.
  const StaticProfile& lookup(std::string_view category, FloatWidth width) const;
  bool contains(std::string_view category, FloatWidth width) const;
  std::vector<const StaticProfile*> all() const;

  std::string to_text() const;

 private:
  std::map<std::pair<std::string, int>, StaticProfile> profiles_;
};

/// One registry line for `profile`, without a trailing newline.
std::string format_profile(const StaticProfile& profile);

}  // namespace tdt
