#pragma once

#include <map>
#include <string>
#include <vector>

namespace quench {

/// Flat "[section]" + "key = value" configuration. Values may be scalars or
/// space-separated lists; '#' starts a comment. Keys are stored as
/// "section.key"; keys before any section header go into "global".
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  long long get_int64(const std::string& key, long long fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  /// All keys in insertion-independent (sorted) order, as "key = value"
  /// lines; embedded into run manifests so a run can be replayed.
  std::vector<std::string> entries() const;

  /// Keys consulted so far; used to reject unknown keys (likely typos).
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> touched_;
};

}  // namespace quench
