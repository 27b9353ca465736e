#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& Config::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end())
    throw ConfigError(source + ": missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double Config::number(const std::string& key) const {
  const std::string& raw = get(key);
  try {
    return parse_double(raw);
  } catch (const Error&) {
    throw ConfigError(source + ": key '" + key + "' is not a number: '" + raw + "'");
  }
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long Config::integer(const std::string& key) const {
  const std::string& raw = get(key);
  std::string t = trim(raw);
  long out = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(source + ": key '" + key + "' is not an integer: '" + raw + "'");
  return out;
}

long Config::integer_or(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Config::flag_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& raw = get(key);
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(source + ": key '" + key + "' is not a boolean: '" + raw + "'");
}

std::uint64_t Config::seed() const {
  const std::string& raw = get("seed");
  std::string t = trim(raw);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(source + ": seed is not an unsigned integer: '" + raw + "'");
  return out;
}

std::vector<double> Config::number_list(const std::string& key) const {
  const std::string& raw = get(key);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty())
      throw ConfigError(source + ": key '" + key + "' has an empty list entry");
    try {
      out.push_back(parse_double(t));
    } catch (const Error&) {
      throw ConfigError(source + ": key '" + key + "' has a non-numeric entry: '" + t + "'");
    }
  }
  if (out.empty())
    throw ConfigError(source + ": key '" + key + "' is an empty list");
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& [k, v] : values) {  // std::map iterates key-sorted
    h = ldp::fnv1a(k.data(), k.size(), h);
    h = ldp::fnv1a("=", 1, h);
    h = ldp::fnv1a(v.data(), v.size(), h);
    h = ldp::fnv1a("\n", 1, h);
  }
  return h;
}

Config parse_config_text(const std::string& text, std::string source) {
  Config c;
  c.source = std::move(source);
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    std::string t = trim(line);
    if (t.empty()) continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(c.source + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(c.source + ":" + std::to_string(line_no) + ": empty key");
    if (c.values.count(key))
      throw ConfigError(c.source + ":" + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    c.values[key] = value;
  }
  return c;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace ldp::cli
