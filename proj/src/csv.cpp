#include "vklbm/csv.hpp"

#include "vklbm/flux.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace vklbm {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw ConfigError("not a number: '" + text + "'");
  return v;
}

void write_field_csv(std::ostream& os, const Grid& grid, std::span<const double> u) {
  if (grid.dims == 1) {
    os << "x,U\n";
  } else {
    for (int a = 0; a < grid.dims; ++a) os << "x" << a + 1 << ",";
    os << "U\n";
  }
  for (size_t i = 0; i < grid.size(); ++i) {
    Point p = grid.position(i);
    for (int a = 0; a < grid.dims; ++a) os << format_double(p[a]) << ",";
    os << format_double(u[i]) << "\n";
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty csv");
  t.header = split_line(line);
  size_t ln = 1;
  while (std::getline(is, line)) {
    ++ln;
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size())
      throw ConfigError("csv line " + std::to_string(ln) + ": wrong column count");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (size_t c = 0; c < table.header.size(); ++c)
    os << (c ? "," : "") << table.header[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << "\n";
  }
}

}  // namespace vklbm
