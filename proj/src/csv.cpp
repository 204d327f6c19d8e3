#include "swim3d/csv.hpp"

#include <cmath>
#include <cstdio>

namespace swim3d::csv {

std::string number(double value)
{
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // snprintf honours the global C locale; the CLI never changes it from "C".
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_row(std::ostream & os, const std::vector<std::string> & cells)
{
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace swim3d::csv
