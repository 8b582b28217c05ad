#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

/// One [section] of a structured text file: key = value pairs plus bare
/// whitespace-separated rows, in file order. '#' starts a comment.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<std::vector<std::string>> rows;

  const std::string* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long get_long(const std::string& key) const;
  long get_long_or(const std::string& key, long fallback) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
};

struct ConfigDoc {
  std::string origin;  // path or description, for diagnostics
  std::vector<ConfigSection> sections;

  const ConfigSection* find(const std::string& name) const;
  const ConfigSection& require(const std::string& name) const;
  std::vector<const ConfigSection*> all(const std::string& name) const;
};

ConfigDoc parse_config_text(const std::string& text, const std::string& origin);
ConfigDoc parse_config_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

double parse_double(const std::string& s, const std::string& context);
long parse_long(const std::string& s, const std::string& context);

/// Splits "a,b , c" into trimmed non-empty tokens.
std::vector<std::string> split_list(const std::string& s, char sep = ',');
std::string trim(const std::string& s);

}  // namespace spinbath
