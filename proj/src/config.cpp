#include "spinbath/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spinbath {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  const std::string t = trim(s);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    fail(ErrorCode::config, context + ": not a number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s, const std::string& context) {
  const std::string t = trim(s);
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    fail(ErrorCode::config, context + ": not an integer: '" + s + "'");
  return v;
}

const std::string* ConfigSection::find(const std::string& key) const {
  for (const auto& [k, v] : kv)
    if (k == key) return &v;
  return nullptr;
}

std::string ConfigSection::get(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) fail(ErrorCode::config, "[" + name + "] missing key '" + key + "'");
  return *v;
}

std::string ConfigSection::get_or(const std::string& key,
                                  const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double ConfigSection::get_double(const std::string& key) const {
  return parse_double(get(key), "[" + name + "] " + key);
}

double ConfigSection::get_double_or(const std::string& key,
                                    double fallback) const {
  const std::string* v = find(key);
  return v ? parse_double(*v, "[" + name + "] " + key) : fallback;
}

long ConfigSection::get_long(const std::string& key) const {
  return parse_long(get(key), "[" + name + "] " + key);
}

long ConfigSection::get_long_or(const std::string& key, long fallback) const {
  const std::string* v = find(key);
  return v ? parse_long(*v, "[" + name + "] " + key) : fallback;
}

std::uint64_t ConfigSection::get_u64_or(const std::string& key,
                                        std::uint64_t fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  long l = parse_long(*v, "[" + name + "] " + key);
  if (l < 0) fail(ErrorCode::config, "[" + name + "] " + key + " must be >= 0");
  return static_cast<std::uint64_t>(l);
}

const ConfigSection* ConfigDoc::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

const ConfigSection& ConfigDoc::require(const std::string& name) const {
  const ConfigSection* s = find(name);
  if (!s) fail(ErrorCode::config, origin + ": missing section [" + name + "]");
  return *s;
}

std::vector<const ConfigSection*> ConfigDoc::all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

ConfigDoc parse_config_text(const std::string& text, const std::string& origin) {
  ConfigDoc doc;
  doc.origin = origin;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  ConfigSection* cur = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(ErrorCode::config,
             origin + ":" + std::to_string(lineno) + ": malformed section header");
      doc.sections.push_back({trim(line.substr(1, line.size() - 2)), {}, {}});
      cur = &doc.sections.back();
      continue;
    }
    if (!cur)
      fail(ErrorCode::config,
           origin + ":" + std::to_string(lineno) + ": content before any section");
    size_t eq = line.find('=');
    if (eq != std::string::npos) {
      cur->kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } else {
      std::vector<std::string> row;
      std::stringstream ss(line);
      std::string tok;
      while (ss >> tok) row.push_back(tok);
      cur->rows.push_back(std::move(row));
    }
  }
  return doc;
}

ConfigDoc parse_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path), path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write file: " + path);
  out << content;
  if (!out) fail(ErrorCode::io, "short write: " + path);
}

}  // namespace spinbath
