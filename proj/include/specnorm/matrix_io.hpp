#pragma once

// Text formats: matrix files (first line n, then n rows of `re+imi` tokens)
// and plain numeric CSV.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "specnorm/errors.hpp"
#include "specnorm/linalg.hpp"

namespace specnorm::io {

using linalg::Complex;
using linalg::ComplexMatrix;

/// Accepts `a`, `bi`, `a+bi`, `a-bi` (plain `i` means 1i).
inline Complex parse_complex(std::string_view token) {
  const std::string s(token);
  if (s.empty()) throw ParseError("empty complex number");
  auto fail = [&] { return ParseError("bad complex number '" + s + "'"); };

  if (s.back() != 'i') {
    char* end = nullptr;
    const double re = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw fail();
    return {re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that does not start an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') throw fail();
    return v;
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  const std::string re_text = body.substr(0, split);
  char* end = nullptr;
  const double re = std::strtod(re_text.c_str(), &end);
  if (end == re_text.c_str() || *end != '\0') throw fail();
  return {re, imag_of(body.substr(split))};
}

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline ComplexMatrix read_matrix(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n)) throw ParseError("matrix file must start with the dimension n");
  if (n == 0 || n > linalg::kMaxDimension) throw ParseError("matrix dimension out of range");
  std::vector<Complex> entries;
  entries.reserve(n * n);
  std::string token;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!(is >> token)) throw ParseError("matrix file has fewer than n*n entries");
    entries.push_back(parse_complex(token));
  }
  if (is >> token) throw ParseError("matrix file has trailing content '" + token + "'");
  return ComplexMatrix(n, std::move(entries));
}

inline void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  os << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << format_complex(m(i, j));
    os << '\n';
  }
}

/// Numeric CSV; a first line that does not parse as numbers is treated as a header.
inline std::vector<std::vector<double>> read_numeric_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ls, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cell = b == std::string::npos ? std::string() : cell.substr(b, e - b + 1);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError("non-numeric CSV row '" + line + "'");
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace specnorm::io
