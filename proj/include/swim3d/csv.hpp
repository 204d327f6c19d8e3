#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swim3d::csv {

/// 17 significant digits, '.' separator; "inf", "-inf", "nan" for non-finite values.
std::string number(double value);

/// Comma-joined row terminated by a single '\n'.
void write_row(std::ostream & os, const std::vector<std::string> & cells);

}  // namespace swim3d::csv
