#include "fewnomial/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "fewnomial/errors.hpp"

namespace fewnomial {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> split(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double to_real(const Token& t, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.text.c_str(), &end);
  if (end != t.text.c_str() + t.text.size() || t.text.empty()) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(t.column) + ": '" + t.text +
                         "' is not a number",
                     line, t.column);
  }
  if (errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(t.column) + ": '" + t.text +
                         "' is out of range",
                     line, t.column);
  }
  return v;
}

int to_count(const Token& t, int line, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(t.text.c_str(), &end, 10);
  if (end != t.text.c_str() + t.text.size() || v < 1 || v > 64) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(t.column) + ": " + what +
                         " must be an integer in [1, 64], got '" + t.text + "'",
                     line, t.column);
  }
  return static_cast<int>(v);
}

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto tokens = split(raw);
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Spectrum parse_spectrum(const std::string& text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty spectrum file", 1, 0);
  const Line& head = lines.front();
  if (head.tokens.size() != 2) {
    const int col = head.tokens.size() > 2 ? head.tokens[2].column : 0;
    throw ParseError("line " + std::to_string(head.number) + ": expected \"n k\"", head.number, col);
  }
  const int n = to_count(head.tokens[0], head.number, "n");
  const int k = to_count(head.tokens[1], head.number, "k");
  const int cols = n + k;
  if (static_cast<int>(lines.size()) - 1 < n) {
    const int at = lines.back().number + 1;
    throw ParseError("line " + std::to_string(at) + ": expected " + std::to_string(n) + " rows, found " +
                         std::to_string(lines.size() - 1),
                     at, 0);
  }
  if (static_cast<int>(lines.size()) - 1 > n) {
    const Line& extra = lines[static_cast<std::size_t>(n) + 1];
    throw ParseError("line " + std::to_string(extra.number) + ": unexpected row beyond the " + std::to_string(n) +
                         " declared",
                     extra.number, extra.tokens.front().column);
  }
  Matrix a(n, cols);
  for (int i = 0; i < n; ++i) {
    const Line& row = lines[static_cast<std::size_t>(i) + 1];
    if (static_cast<int>(row.tokens.size()) != cols) {
      const int col = static_cast<int>(row.tokens.size()) > cols ? row.tokens[static_cast<std::size_t>(cols)].column : 0;
      throw ParseError("line " + std::to_string(row.number) + ": expected " + std::to_string(cols) + " entries, found " +
                           std::to_string(row.tokens.size()),
                       row.number, col);
    }
    for (int j = 0; j < cols; ++j) a(i, j) = to_real(row.tokens[static_cast<std::size_t>(j)], row.number);
  }
  return Spectrum(a);
}

Spectrum read_spectrum(const std::string& path) { return parse_spectrum(read_file(path)); }

Vector parse_coefficients(const std::string& text, int expected) {
  std::vector<double> values;
  int last_line = 1;
  for (const Line& line : content_lines(text)) {
    last_line = line.number;
    for (const Token& t : line.tokens) {
      if (expected >= 0 && static_cast<int>(values.size()) == expected) {
        throw ParseError("line " + std::to_string(line.number) + ", column " + std::to_string(t.column) +
                             ": more than " + std::to_string(expected) + " coefficients",
                         line.number, t.column);
      }
      values.push_back(to_real(t, line.number));
    }
  }
  if (expected >= 0 && static_cast<int>(values.size()) != expected) {
    throw ParseError("expected " + std::to_string(expected) + " coefficients, found " + std::to_string(values.size()),
                     last_line, 0);
  }
  if (values.empty()) throw ParseError("no coefficients", 1, 0);
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector read_coefficients(const std::string& path, int expected) {
  return parse_coefficients(read_file(path), expected);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path + ": " + std::strerror(errno));
  out << contents;
  if (!out) throw FileError("write failed for " + path);
}

void write_cloud_csv(std::ostream& out, const ContourCloud& cloud) {
  out << (cloud.dimension >= 3 ? "u,v,w,sigma,source\n" : "u,v,sigma,source\n");
  for (const ContourSample& s : cloud.samples) {
    for (Eigen::Index i = 0; i < s.point.size(); ++i) out << fmt(s.point(i)) << ',';
    if (s.point.size() == 1) out << "0,";
    out << s.sigma << ',' << (s.face < 0 ? std::string("main") : "face:" + std::to_string(s.face)) << '\n';
  }
}

std::string cloud_csv(const ContourCloud& cloud) {
  std::ostringstream out;
  write_cloud_csv(out, cloud);
  return out.str();
}

}  // namespace fewnomial
