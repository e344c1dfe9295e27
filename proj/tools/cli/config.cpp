#include "cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ghostlab/numerics.hpp"

namespace ghostlab::cli {

IniFile IniFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  IniFile ini = parse(in, path.string());
  ini.base_dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return ini;
}

IniFile IniFile::parse(std::istream& in, const std::string& source_name) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source_name + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  IniFile ini;
  ini.source_ = source_name;
  ini.base_dir_ = ".";
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      if (!node.data().empty()) ini.top_level_keys_.push_back(name);
      ini.values_[name];
      continue;
    }
    auto& section = ini.values_[name];
    for (const auto& [key, value] : node) section[key] = value.data();
  }
  return ini;
}

void IniFile::fail(const std::string& section, const std::string& key, const std::string& what) const {
  throw ConfigError(source_ + ": [" + section + "] " + key + ": " + what);
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  return s != values_.end() && s->second.contains(key);
}

std::optional<std::string> IniFile::text(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  used_.emplace(section, key);
  return k->second;
}

std::string IniFile::required_text(const std::string& section, const std::string& key) const {
  auto v = text(section, key);
  if (!v) fail(section, key, "missing required key");
  return *v;
}

std::optional<double> IniFile::number(const std::string& section, const std::string& key) const {
  const auto v = text(section, key);
  if (!v) return std::nullopt;
  const auto d = parse_number(*v);
  if (!d || !std::isfinite(*d)) fail(section, key, "'" + *v + "' is not a finite number");
  return d;
}

double IniFile::required_number(const std::string& section, const std::string& key) const {
  auto v = number(section, key);
  if (!v) fail(section, key, "missing required key");
  return *v;
}

std::optional<int> IniFile::integer(const std::string& section, const std::string& key) const {
  const auto d = number(section, key);
  if (!d) return std::nullopt;
  if (*d != std::floor(*d) || std::abs(*d) > 1e9) fail(section, key, "expected an integer");
  return static_cast<int>(*d);
}

int IniFile::required_integer(const std::string& section, const std::string& key) const {
  auto v = integer(section, key);
  if (!v) fail(section, key, "missing required key");
  return *v;
}

std::optional<bool> IniFile::boolean(const std::string& section, const std::string& key) const {
  const auto v = text(section, key);
  if (!v) return std::nullopt;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  fail(section, key, "'" + *v + "' is not a boolean");
}

std::optional<std::vector<double>> IniFile::numbers(const std::string& section, const std::string& key) const {
  const auto v = text(section, key);
  if (!v) return std::nullopt;
  std::vector<double> out;
  std::istringstream words(*v);
  for (std::string w; words >> w;) {
    const auto d = parse_number(w);
    if (!d || !std::isfinite(*d)) fail(section, key, "'" + w + "' is not a finite number");
    out.push_back(*d);
  }
  return out;
}

std::vector<double> IniFile::required_numbers(const std::string& section, const std::string& key) const {
  auto v = numbers(section, key);
  if (!v) fail(section, key, "missing required key");
  if (v->empty()) fail(section, key, "list is empty");
  return *v;
}

void IniFile::reject_unknown() const {
  std::string unknown;
  for (const auto& key : top_level_keys_) unknown += " " + key;
  for (const auto& [section, keys] : values_) {
    for (const auto& [key, value] : keys) {
      if (!used_.contains({section, key})) unknown += " [" + section + "]" + key;
    }
  }
  if (!unknown.empty()) throw ConfigError(source_ + ": unknown keys:" + unknown);
}

}  // namespace ghostlab::cli
