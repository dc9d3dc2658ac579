#pragma once

#include "vklbm/grid.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace vklbm {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Columns: coordinates (x, or x1..xD) then U.
void write_field_csv(std::ostream& os, const Grid& grid, std::span<const double> u);
CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& table);

}  // namespace vklbm
