#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ldp::cli {

// One experiment described as flat key=value lines: '#' starts a comment,
// blank lines are skipped, keys and values are whitespace-trimmed, and a
// repeated key is an error.  The canonical form (keys sorted) feeds the
// config hash, so reordering lines or editing comments does not change a
// run's identity.
struct Config {
  std::map<std::string, std::string> values;
  std::string source;  // file path or "<inline>" for parsed text

  bool has(const std::string& key) const { return values.count(key) != 0; }

  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::uint64_t seed() const;  // mandatory; no wall-clock fallback
  std::vector<double> number_list(const std::string& key) const;

  // FNV-1a over the sorted "key=value\n" form.
  std::uint64_t hash() const;
};

Config parse_config_text(const std::string& text, std::string source);
Config parse_config_file(const std::string& path);

}  // namespace ldp::cli
