#include "qtzopt/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qtzopt {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got: " + t);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::take(const std::string& key) {
  consumed_.insert(key);
  return kv_.at(key);
}

std::string Config::get_str(const std::string& key, const std::string& def) {
  if (!has(key)) return def;
  return take(key);
}

double Config::get_double(const std::string& key, double def) {
  if (!has(key)) return def;
  std::string v = take(key);
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not a number: " + v);
  }
}

long Config::get_long(const std::string& key, long def) {
  if (!has(key)) return def;
  std::string v = take(key);
  try {
    std::size_t pos = 0;
    long l = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return l;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not an integer: " + v);
  }
}

bool Config::get_bool(const std::string& key, bool def) {
  if (!has(key)) return def;
  std::string v = take(key);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw std::runtime_error("config key '" + key + "': not a boolean: " + v);
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& def) {
  if (!has(key)) return def;
  std::string v = take(key);
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw std::runtime_error("config key '" + key + "': empty list");
  return out;
}

std::vector<std::uint64_t> Config::get_seeds(const std::string& key, long n_trials) {
  std::vector<std::uint64_t> out;
  if (has(key)) {
    std::string v = take(key);
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      out.push_back(std::stoull(item));
    }
    if (out.empty()) throw std::runtime_error("config key '" + key + "': empty seed list");
    return out;
  }
  for (long i = 0; i < n_trials; ++i) out.push_back(static_cast<std::uint64_t>(i));
  return out;
}

void Config::reject_unknown() const {
  std::string bad;
  for (const auto& [k, v] : kv_) {
    if (!consumed_.count(k)) {
      if (!bad.empty()) bad += ", ";
      bad += k;
    }
  }
  if (!bad.empty()) throw std::runtime_error("unknown config key(s): " + bad);
}

}  // namespace qtzopt
