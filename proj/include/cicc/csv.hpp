#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cicc {

/// Formats a double losslessly enough for plotting and byte-stable across
/// runs of the same binary.
std::string csv_number(double x);

/// RFC-4180-style escaping: fields containing commas, quotes, or newlines
/// are quoted with inner quotes doubled.
std::string csv_escape(const std::string& field);

/// Line-per-row CSV writer with LF endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
};

}  // namespace cicc
