#pragma once

// Extension of ‖·‖_{X,d} from Hermitian matrices to all of M_n through the
// averaged trace polynomials T_π.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specnorm/combinatorics.hpp"
#include "specnorm/distributions.hpp"
#include "specnorm/errors.hpp"
#include "specnorm/linalg.hpp"
#include "specnorm/norms.hpp"
#include "specnorm/numeric.hpp"

namespace specnorm::extension {

using combinatorics::Partition;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::Mark;

inline constexpr int kMaxExtensionDegree = 12;

/// A choice of d/2 of the d positions to carry an adjoint; bit k set means
/// position k is Z*.
struct AdjointPlacement {
  int d = 0;
  std::uint32_t mask = 0;

  AdjointPlacement(int degree, std::uint32_t bits) : d(degree), mask(bits) {
    if (d < 2 || d % 2 != 0) throw OddExponent("adjoint placements need an even d >= 2");
    if (d > kMaxExtensionDegree || (mask >> d) != 0 || std::popcount(mask) != d / 2) {
      throw InvalidParameter("placement must mark exactly d/2 of d positions");
    }
  }

  bool is_adjoint(int position) const { return ((mask >> position) & 1U) != 0; }
};

/// All C(d, d/2) placements in increasing mask order.
inline std::vector<AdjointPlacement> enumerate_placements(int d) {
  if (d < 2 || d % 2 != 0) throw OddExponent("adjoint placements need an even d >= 2");
  if (d > kMaxExtensionDegree) throw OutOfRange("placements supported for d <= 12");
  std::vector<AdjointPlacement> out;
  for (std::uint32_t m = 0; m < (1U << d); ++m) {
    if (std::popcount(m) == d / 2) out.emplace_back(d, m);
  }
  return out;
}

namespace detail {

/// Memoized traces of words, keyed by (length, adjoint bit pattern).
class TraceWordTable {
 public:
  explicit TraceWordTable(const ComplexMatrix& z) : z_(z) {}

  Complex get(int length, std::uint32_t bits) {
    auto& row = table_.at(static_cast<std::size_t>(length));
    if (row.empty()) row.resize(std::size_t{1} << length);
    auto& slot = row[bits];
    if (!slot) {
      std::vector<Mark> word(static_cast<std::size_t>(length));
      for (int k = 0; k < length; ++k) word[static_cast<std::size_t>(k)] = ((bits >> k) & 1U) ? Mark::adjoint : Mark::plain;
      slot = linalg::trace_word(z_, word);
    }
    return *slot;
  }

 private:
  const ComplexMatrix& z_;
  std::vector<std::vector<std::optional<Complex>>> table_ =
      std::vector<std::vector<std::optional<Complex>>>(kMaxExtensionDegree + 1);
};

inline void check_degree(int d) {
  if (d < 2 || d % 2 != 0) throw OddExponent("T_pi needs an even degree >= 2");
  if (d > kMaxExtensionDegree) throw OutOfRange("T_pi supported for d <= 12");
}

/// T_π with trace factor j reading the global positions
/// layout[o_j], …, layout[o_j + π_j − 1], where o_j = π₁ + … + π_{j−1}.
inline double trace_T_layout(const Partition& pi, TraceWordTable& words, std::span<const int> layout) {
  const int d = pi.degree();
  check_degree(d);
  if (static_cast<int>(layout.size()) != d) throw LengthMismatch("layout must list all d positions");

  CompensatedSum re, im;
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
    if (std::popcount(mask) != d / 2) continue;
    Complex product = 1.0;
    std::size_t offset = 0;
    for (int part : pi.parts()) {
      std::uint32_t bits = 0;
      for (int k = 0; k < part; ++k) {
        if ((mask >> layout[offset + static_cast<std::size_t>(k)]) & 1U) bits |= 1U << k;
      }
      product *= words.get(part, bits);
      offset += static_cast<std::size_t>(part);
    }
    re.add(product.real());
    im.add(product.imag());
    ++count;
  }
  const double value = re.value() / static_cast<double>(count);
  const double imag = im.value() / static_cast<double>(count);
  if (std::abs(imag) > 1e-9 * (1.0 + std::abs(value))) {
    throw InconsistentResult("T_pi has imaginary part " + std::to_string(imag));
  }
  return value;
}

inline std::vector<int> identity_layout(int d) {
  std::vector<int> layout(static_cast<std::size_t>(d));
  std::iota(layout.begin(), layout.end(), 0);
  return layout;
}

}  // namespace detail

/// T_π(Z): the average over all C(d, d/2) adjoint placements of
/// (tr W⋯W)_{π₁} ⋯ (tr W⋯W)_{π_r}, positions filled in contiguous blocks.
inline double trace_T(const Partition& pi, const ComplexMatrix& z) {
  detail::check_degree(pi.degree());
  detail::TraceWordTable words(z);
  return detail::trace_T_layout(pi, words, detail::identity_layout(pi.degree()));
}

/// (Σ_{π⊢d} κ_π T_π(Z) / y_π)^{1/d}; a norm on M_n restricting to the
/// partition form on Hermitian matrices.
inline double norm_extended(const ComplexMatrix& z, const distributions::Distribution& dist, int d) {
  detail::check_degree(d);
  if (!dist.has_moment(d)) throw MomentDoesNotExist(dist.label() + " lacks moments of order d");
  const auto kappa = distributions::cumulants(dist, d);
  detail::TraceWordTable words(z);
  const auto layout = detail::identity_layout(d);
  CompensatedSum sum;
  double magnitude = 0.0;
  for (const auto& pi : combinatorics::cached_partitions(d)) {
    double k = 1.0;
    for (int part : pi.parts()) k *= kappa.at(part);
    if (k == 0.0) continue;
    const double term = k * detail::trace_T_layout(pi, words, layout) / static_cast<double>(pi.y());
    sum.add(term);
    magnitude += std::abs(term);
  }
  return norms::detail::root_of_nonnegative(sum.value(), magnitude, d);
}

}  // namespace specnorm::extension
