#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghostlab::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectioned key = value file.  Every key read through a getter is marked
/// used; reject_unknown() then fails on whatever was never asked for.
class IniFile {
 public:
  static IniFile load(const std::filesystem::path& path);
  static IniFile parse(std::istream& in, const std::string& source_name);

  /// Directory used to resolve relative file references.
  const std::filesystem::path& base_dir() const { return base_dir_; }

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> text(const std::string& section, const std::string& key) const;
  std::string required_text(const std::string& section, const std::string& key) const;

  std::optional<double> number(const std::string& section, const std::string& key) const;
  double required_number(const std::string& section, const std::string& key) const;
  std::optional<int> integer(const std::string& section, const std::string& key) const;
  int required_integer(const std::string& section, const std::string& key) const;
  std::optional<bool> boolean(const std::string& section, const std::string& key) const;
  /// Whitespace-separated list of numbers.
  std::optional<std::vector<double>> numbers(const std::string& section, const std::string& key) const;
  std::vector<double> required_numbers(const std::string& section, const std::string& key) const;

  /// Throws ConfigError naming every key that no getter asked for.
  void reject_unknown() const;

 private:
  std::string source_;
  std::filesystem::path base_dir_;
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::vector<std::string> top_level_keys_;
  mutable std::set<std::pair<std::string, std::string>> used_;

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const;
};

}  // namespace ghostlab::cli
