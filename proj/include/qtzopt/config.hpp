#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qtzopt {

// Flat key-value configuration with dotted section names, e.g.
//   sa.alpha = 0.9995
// Lines starting with '#' are comments. Every key must be consumed by the
// experiment that runs; leftovers are reported as unknown keys.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_str(const std::string& key, const std::string& def);
  double get_double(const std::string& key, double def);
  long get_long(const std::string& key, long def);
  bool get_bool(const std::string& key, bool def);
  // Comma-separated values, e.g. "qtz,sa,qia".
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& def);
  // Explicit seed list, else 0..n_trials-1.
  std::vector<std::uint64_t> get_seeds(const std::string& key, long n_trials);

  // Throws with the offending keys if anything was set but never read.
  void reject_unknown() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::string take(const std::string& key);

  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> consumed_;
};

}  // namespace qtzopt
