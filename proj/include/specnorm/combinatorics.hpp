#pragma once

// Integer partitions, complete Bell and complete homogeneous polynomials,
// factorial-type coefficients and the gamma function.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specnorm/errors.hpp"

namespace specnorm::combinatorics {

inline constexpr int kMaxPartitionDegree = 20;

inline std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw OutOfRange("factorial needs 0 <= n <= 20, got " + std::to_string(n));
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > 62) throw OutOfRange("binomial arguments out of range");
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

/// d! / (i₁! i₂! ⋯ i_n!) as a double.
inline double multinomial(std::span<const int> counts) {
  double result = 1.0;
  int running = 0;
  for (int c : counts) {
    for (int j = 1; j <= c; ++j) result = result * static_cast<double>(running + j) / j;
    running += c;
  }
  return result;
}

/// π = (π₁ ≥ π₂ ≥ … ≥ π_r) with Σπ_j = d.
class Partition {
 public:
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidParameter("partition needs at least one part");
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (parts_[j] <= 0) throw InvalidParameter("partition parts must be positive");
      if (j > 0 && parts_[j] > parts_[j - 1]) throw InvalidParameter("partition parts must be nonincreasing");
      degree_ += parts_[j];
    }
    multiplicities_.assign(static_cast<std::size_t>(degree_) + 1, 0);
    for (int p : parts_) ++multiplicities_[static_cast<std::size_t>(p)];
  }

  std::span<const int> parts() const { return parts_; }
  int degree() const { return degree_; }
  std::size_t length() const { return parts_.size(); }

  /// m_i, the number of parts equal to i.
  int multiplicity(int i) const {
    return i >= 1 && i <= degree_ ? multiplicities_[static_cast<std::size_t>(i)] : 0;
  }

  /// y_π = ∏ (i!)^{m_i} m_i!
  std::uint64_t y() const {
    std::uint64_t result = 1;
    for (int i = 1; i <= degree_; ++i) {
      const int m = multiplicity(i);
      const std::uint64_t fi = factorial(i);
      for (int k = 0; k < m; ++k) result *= fi;
      result *= factorial(m);
    }
    return result;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  int degree_ = 0;
  std::vector<int> multiplicities_;
};

inline std::uint64_t partition_y(const Partition& p) { return p.y(); }

/// All partitions of d in reverse-lexicographic order, starting from (d).
inline std::vector<Partition> enumerate_partitions(int d) {
  if (d < 1 || d > kMaxPartitionDegree) {
    throw OutOfRange("partition degree must be in [1, 20], got " + std::to_string(d));
  }
  std::vector<Partition> out;
  std::vector<int> parts{d};
  while (true) {
    out.emplace_back(parts);
    // Peel trailing ones, decrement the last part > 1, refill greedily.
    int remainder = 0;
    while (!parts.empty() && parts.back() == 1) {
      ++remainder;
      parts.pop_back();
    }
    if (parts.empty()) break;
    const int k = --parts.back();
    ++remainder;
    while (remainder > k) {
      parts.push_back(k);
      remainder -= k;
    }
    if (remainder > 0) parts.push_back(remainder);
  }
  return out;
}

/// Shared, lazily built table of enumerate_partitions(d) for 1 <= d <= 20.
inline const std::vector<Partition>& cached_partitions(int d) {
  static const std::vector<std::vector<Partition>> table = [] {
    std::vector<std::vector<Partition>> t;
    t.emplace_back();
    for (int k = 1; k <= kMaxPartitionDegree; ++k) t.push_back(enumerate_partitions(k));
    return t;
  }();
  if (d < 1 || d > kMaxPartitionDegree) {
    throw OutOfRange("partition degree must be in [1, 20], got " + std::to_string(d));
  }
  return table[static_cast<std::size_t>(d)];
}

namespace detail {

template <class T>
T complete_bell_as(std::span<const T> x) {
  const int d = static_cast<int>(x.size());
  if (d < 1 || d > kMaxPartitionDegree) {
    throw OutOfRange("complete Bell order must be in [1, 20], got " + std::to_string(d));
  }
  std::vector<T> b(static_cast<std::size_t>(d) + 1, T(0));
  b[0] = T(1);
  for (int l = 0; l < d; ++l) {
    T s = 0;
    for (int k = 0; k <= l; ++k) {
      s += static_cast<T>(binomial(l, k)) * b[static_cast<std::size_t>(l - k)] * x[static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(l) + 1] = s;
  }
  return b[static_cast<std::size_t>(d)];
}

}  // namespace detail

/// B_d(x₁,…,x_d) via B_{ℓ+1} = Σ_k C(ℓ,k) B_{ℓ−k} x_{k+1}.
inline double complete_bell(std::span<const double> x) { return detail::complete_bell_as<double>(x); }

inline constexpr int kMaxHomogeneousDegree = 12;
inline constexpr std::size_t kMaxHomogeneousVariables = 8;

/// h_d(λ): sum over nondecreasing index tuples k₁ ≤ … ≤ k_d of λ_{k₁}⋯λ_{k_d}.
inline double complete_homogeneous(std::span<const double> lambda, int d) {
  if (d < 0 || d > kMaxHomogeneousDegree || lambda.size() > kMaxHomogeneousVariables) {
    throw OutOfRange("complete_homogeneous needs d <= 12 and n <= 8");
  }
  if (d == 0) return 1.0;
  const std::size_t n = lambda.size();
  double total = 0.0;
  // depth-first over nondecreasing tuples
  auto recurse = [&](auto&& self, int remaining, std::size_t start, double product) -> void {
    if (remaining == 0) {
      total += product;
      return;
    }
    for (std::size_t k = start; k < n; ++k) self(self, remaining - 1, k, product * lambda[k]);
  };
  recurse(recurse, d, 0, 1.0);
  return total;
}

/// Γ(x) for x ≥ 1, Lanczos approximation with g = 7 and 9 coefficients.
inline double gamma(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw OutOfRange("gamma is defined here for x >= 1");
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coef{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double a = coef[0];
  for (std::size_t i = 1; i < coef.size(); ++i) a += coef[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace specnorm::combinatorics
