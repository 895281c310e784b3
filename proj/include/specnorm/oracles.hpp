#pragma once

// Reference formulas used by the verification suites and tests. Each one is
// computed along a route that does not share code with the engine it checks.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "specnorm/linalg.hpp"

namespace specnorm::oracles {

using linalg::Complex;
using linalg::ComplexMatrix;

/// d!·[t^d] exp(Σ_j x_j t^j / j!), expanding exp(g) = Σ_m g^m / m! with
/// truncated polynomial powers.
inline double bell_by_series(std::span<const double> x) {
  const std::size_t d = x.size();
  std::vector<double> g(d + 1, 0.0);
  double fact = 1.0;
  for (std::size_t j = 1; j <= d; ++j) {
    fact *= static_cast<double>(j);
    g[j] = x[j - 1] / fact;
  }
  std::vector<double> power(d + 1, 0.0), total(d + 1, 0.0);
  power[0] = 1.0;
  total[0] = 1.0;
  double m_fact = 1.0;
  for (std::size_t m = 1; m <= d; ++m) {
    std::vector<double> next(d + 1, 0.0);
    for (std::size_t a = 0; a <= d; ++a)
      for (std::size_t b = 1; a + b <= d; ++b) next[a + b] += power[a] * g[b];
    power = std::move(next);
    m_fact *= static_cast<double>(m);
    for (std::size_t k = 0; k <= d; ++k) total[k] += power[k] / m_fact;
  }
  double d_fact = 1.0;
  for (std::size_t k = 2; k <= d; ++k) d_fact *= static_cast<double>(k);
  return total[d] * d_fact;
}

/// [t^d] ∏_i 1/(1 − λ_i t).
inline double homogeneous_by_series(std::span<const double> lambda, int d) {
  const auto n = static_cast<std::size_t>(d);
  std::vector<double> prod(n + 1, 0.0);
  prod[0] = 1.0;
  for (double l : lambda) {
    // multiply by 1/(1 − l t): c_k ← c_k + l·c_{k−1}, ascending
    for (std::size_t k = 1; k <= n; ++k) prod[k] += l * prod[k - 1];
  }
  return prod[n];
}

/// p(d), number of partitions, by the coin-change recurrence.
inline std::uint64_t partition_count(int d) {
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(d) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= d; ++part)
    for (int s = part; s <= d; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  return ways[static_cast<std::size_t>(d)];
}

/// Eigenvalues of [[a, b], [conj b, c]] by the quadratic formula, descending.
inline std::array<double, 2> eigenvalues_2x2(double a, Complex b, double c) {
  const double mean = 0.5 * (a + c);
  const double radius = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  return {mean + radius, mean - radius};
}

/// ‖Z‖⁴ for standard exponential entries, d = 4, written term by term:
/// (1/24)((tr Z)² tr(Z*)² + tr(Z*)² tr(Z²) + 4 tr Z tr Z* tr(Z*Z) + 2 tr(Z*Z)²
///        + (tr Z)² tr(Z*²) + tr(Z²) tr(Z*²) + 4 tr Z* tr(Z*Z²)
///        + 4 tr Z tr(Z*²Z) + 2 tr(Z*ZZ*Z) + 4 tr(Z*²Z²)).
inline double exponential_d4_trace_polynomial(const ComplexMatrix& z) {
  const ComplexMatrix zs = z.adjoint();
  const Complex tz = z.trace();
  const Complex tzs = zs.trace();
  const Complex t_zsz = (zs * z).trace();
  const Complex t_z2 = (z * z).trace();
  const Complex t_zs2 = (zs * zs).trace();
  const Complex t_zsz2 = (zs * z * z).trace();
  const Complex t_zs2z = (zs * zs * z).trace();
  const Complex t_zszzsz = (zs * z * zs * z).trace();
  const Complex t_zs2z2 = (zs * zs * z * z).trace();
  const Complex total = tz * tz * tzs * tzs + tzs * tzs * t_z2 + 4.0 * tz * tzs * t_zsz + 2.0 * t_zsz * t_zsz +
                        tz * tz * t_zs2 + t_z2 * t_zs2 + 4.0 * tzs * t_zsz2 + 4.0 * tz * t_zs2z +
                        2.0 * t_zszzsz + 4.0 * t_zs2z2;
  return total.real() / 24.0;
}

}  // namespace specnorm::oracles
