#include "quench/config.hpp"

#include <sstream>
#include <stdexcept>

#include "quench/io.hpp"

namespace quench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section = "global";
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    cfg.values_[section + "." + key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  return parse(read_text_file(path));
}

bool KeyValueConfig::has(const std::string& key) const {
  touched_[key] = true;
  return values_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  touched_[key] = true;
  const auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error("missing required config key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  touched_[key] = true;
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size())
    throw std::runtime_error("config key '" + key + "': '" + v +
                             "' is not a number");
  return x;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const double x = get_double(key);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw std::runtime_error("config key '" + key + "' must be an integer");
  return i;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

long long KeyValueConfig::get_int64(const std::string& key,
                                    long long fallback) const {
  if (!has(key)) return fallback;
  return std::stoll(get_string(key));
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key) const {
  std::istringstream is(get_string(key));
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    size_t pos = 0;
    out.push_back(std::stod(tok, &pos));
    if (pos != tok.size())
      throw std::runtime_error("config key '" + key + "': '" + tok +
                               "' is not a number");
  }
  if (out.empty())
    throw std::runtime_error("config key '" + key + "' holds an empty list");
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (double v : get_double_list(key)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw std::runtime_error("config key '" + key +
                               "' must hold integers only");
    out.push_back(i);
  }
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::vector<std::string> KeyValueConfig::entries() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k + " = " + v);
  return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!touched_.count(k)) out.push_back(k);
  return out;
}

}  // namespace quench
