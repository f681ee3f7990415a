#pragma once

#include <iosfwd>
#include <string>

#include "tukey/geometry.hpp"

namespace tukey::io {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Strict parse of a full token; throws std::invalid_argument on junk or on
// values that are not finite ("nan", "inf", overflow).
double parse_double(const std::string& token);

// Text format: one "x,y" pair per line; blank lines and lines starting with
// '#' (after leading whitespace) are ignored.  Parse errors report the line
// number.
PointSet read_points(std::istream& in);
PointSet read_points_file(const std::string& path);
std::string write_points(const PointSet& points);
void write_points_file(const PointSet& points, const std::string& path);

}  // namespace tukey::io
