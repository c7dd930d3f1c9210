#pragma once

#include <iosfwd>
#include <string>

#include "fewnomial/contour.hpp"
#include "fewnomial/linalg.hpp"
#include "fewnomial/spectrum.hpp"

namespace fewnomial {

/// Spectrum text: first line "n k", then n lines of n+k reals. Blank lines
/// and '#' comments are skipped. Throws ParseError with the line and column
/// of the first bad token.
Spectrum parse_spectrum(const std::string& text);
Spectrum read_spectrum(const std::string& path);

/// Coefficients: whitespace separated reals over any number of lines.
/// `expected` < 0 skips the length check.
Vector parse_coefficients(const std::string& text, int expected = -1);
Vector read_coefficients(const std::string& path, int expected = -1);

/// Whole file as a string; FileError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// "u,v,sigma,source" (plus "w" for three-dimensional clouds), one row per
/// sample in cloud order. source is "main" or "face:<index>".
void write_cloud_csv(std::ostream& out, const ContourCloud& cloud);
std::string cloud_csv(const ContourCloud& cloud);

}  // namespace fewnomial
