#include "perptail/common/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "perptail/common/error.hpp"

namespace perptail::csv {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string fmt(long long v) { return std::to_string(v); }

void Table::add(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(fmt(v));
  rows_.push_back(std::move(cells));
}

void Table::add_text(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string Table::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + tmp.string());
    f << content;
    if (!f) fail(ErrorCode::ConfigInvalid, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace perptail::csv
