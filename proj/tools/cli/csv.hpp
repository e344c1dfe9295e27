#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghostlab::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
};

/// Plain comma-separated text (no quoting).  Throws std::runtime_error when a
/// row's field count differs from the header's.
CsvTable read_csv(std::istream& in);

}  // namespace ghostlab::cli
