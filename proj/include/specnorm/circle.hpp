#pragma once

// Unit circles of ‖·‖_{X,d} restricted to 2×2 diagonal matrices: for each
// direction (cos θ, sin θ) the boundary point (cos θ, sin θ) / ‖diag(cos θ, sin θ)‖.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "specnorm/errors.hpp"
#include "specnorm/norms.hpp"

namespace specnorm::circle {

enum class Method { exact, mc };

struct CircleRow {
  double theta = 0.0;
  double dir1 = 0.0;
  double dir2 = 0.0;
  double norm = 0.0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const CircleRow&, const CircleRow&) = default;
};

struct CircleTable {
  std::vector<CircleRow> rows;
};

inline constexpr std::size_t kDefaultMcSamples = 100000;

/// θ_k = 2πk / resolution. The Monte Carlo method reuses the same sample
/// indices for every θ.
inline CircleTable circle_samples(const distributions::Distribution& dist, double d, std::size_t resolution,
                                  Method method, std::size_t n_samples = kDefaultMcSamples,
                                  std::uint64_t seed = 0) {
  if (resolution == 0) throw InvalidParameter("resolution must be positive");
  const norms::NormSpec spec(dist, d);
  if (method == Method::exact) spec.even_degree();
  CircleTable table;
  table.rows.reserve(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    CircleRow row;
    row.theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution);
    row.dir1 = std::cos(row.theta);
    row.dir2 = std::sin(row.theta);
    const std::array<double, 2> lambda{row.dir1, row.dir2};
    row.norm = method == Method::exact ? norms::norm_exact_partition(lambda, spec)
                                       : norms::norm_mc(lambda, spec, n_samples, seed).value;
    row.x = row.dir1 / row.norm;
    row.y = row.dir2 / row.norm;
    table.rows.push_back(row);
  }
  return table;
}

inline constexpr const char* kCsvHeader = "theta,dir1,dir2,norm,x,y";

/// 17 significant digits, so parsing the output reproduces every double.
inline void write_csv(std::ostream& os, const CircleTable& table) {
  os << kCsvHeader << '\n';
  char buf[160];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.theta, r.dir1, r.dir2, r.norm,
                  r.x, r.y);
    os << buf;
  }
}

inline CircleTable read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw ParseError("circle CSV must start with header");
  CircleTable table;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 6> v{};
    std::size_t field = 0;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      if (field >= v.size()) throw ParseError("too many fields in circle CSV row");
      char* end = nullptr;
      v[field] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw ParseError("bad number '" + cell + "'");
      ++field;
    }
    if (field != v.size()) throw ParseError("circle CSV row needs 6 fields");
    table.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return table;
}

/// Single closed polyline through the unit-circle points.
inline void write_svg(std::ostream& os, const CircleTable& table, double size_px = 480.0) {
  double extent = 0.0;
  for (const auto& r : table.rows) extent = std::max({extent, std::abs(r.x), std::abs(r.y)});
  if (extent == 0.0) extent = 1.0;
  const double scale = 0.45 * size_px / extent;
  const double c = 0.5 * size_px;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
     << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
  os << "  <line x1=\"0\" y1=\"" << c << "\" x2=\"" << size_px << "\" y2=\"" << c
     << "\" stroke=\"#bbb\"/>\n";
  os << "  <line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << size_px
     << "\" stroke=\"#bbb\"/>\n";
  os << "  <polyline fill=\"none\" stroke=\"black\" points=\"";
  char buf[64];
  auto emit = [&](const CircleRow& r) {
    std::snprintf(buf, sizeof buf, "%.4f,%.4f ", c + scale * r.x, c - scale * r.y);
    os << buf;
  };
  for (const auto& r : table.rows) emit(r);
  if (!table.rows.empty()) emit(table.rows.front());
  os << "\"/>\n</svg>\n";
}

}  // namespace specnorm::circle
