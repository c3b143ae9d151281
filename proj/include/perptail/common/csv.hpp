#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace perptail::csv {

// Locale independent, round-trippable: 17 significant digits, scientific.
std::string fmt(double v);
std::string fmt(long long v);

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(const std::vector<double>& row);
  void add_text(std::vector<std::string> row);

  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace perptail::csv
