#pragma once

// Majorization x ≺ y, the Hardy-Littlewood-Pólya doubly stochastic matrix
// built from T-transforms, Birkhoff decomposition into permutations, and the
// Ky Fan eigenvalue inequality.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specnorm/errors.hpp"
#include "specnorm/linalg.hpp"
#include "specnorm/numeric.hpp"

namespace specnorm::majorization {

inline constexpr double kTolerance = 1e-10;

namespace detail {
inline std::vector<double> sorted_descending(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>{});
  return s;
}
}  // namespace detail

/// x ≺ y: equal totals, and each sum of the k largest entries of x is at most
/// the corresponding sum for y (tolerance 1e-10 per comparison).
inline bool majorizes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("majorization needs vectors of equal length");
  const auto xs = detail::sorted_descending(x);
  const auto ys = detail::sorted_descending(y);
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (k + 1 < xs.size()) {
      if (px > py + kTolerance) return false;
    } else if (std::abs(px - py) > kTolerance) {
      return false;
    }
  }
  return true;
}

/// Nonnegative n×n matrix whose rows and columns each sum to 1 (± 1e-10).
class DoublyStochastic {
 public:
  DoublyStochastic(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n == 0 || a_.size() != n * n) throw DimensionMismatch("doubly stochastic matrix must be n×n, n >= 1");
    for (double& v : a_) {
      if (!std::isfinite(v) || v < -1e-14) throw InvalidParameter("entries must be nonnegative");
      if (v < 0.0) v = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += (*this)(i, j);
        col += (*this)(j, i);
      }
      if (std::abs(row - 1.0) > kTolerance || std::abs(col - 1.0) > kTolerance) {
        throw InvalidParameter("row and column sums must equal 1");
      }
    }
  }

  static DoublyStochastic identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return {n, std::move(e)};
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> entries() const { return a_; }

  std::vector<double> apply(std::span<const double> y) const {
    if (y.size() != n_) throw LengthMismatch("vector length must match matrix dimension");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * y[j];
    return out;
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// One term c·P, with (P y)_i = y[permutation[i]].
struct BirkhoffTerm {
  double coefficient = 0.0;
  std::vector<std::size_t> permutation;
};

struct BirkhoffDecomposition {
  std::vector<BirkhoffTerm> terms;

  /// Σ c_i P_i as a dense row-major matrix.
  std::vector<double> reconstruct(std::size_t n) const {
    std::vector<double> m(n * n, 0.0);
    for (const auto& t : terms)
      for (std::size_t i = 0; i < n; ++i) m[i * n + t.permutation[i]] += t.coefficient;
    return m;
  }

  /// Σ c_i P_i y.
  std::vector<double> apply(std::span<const double> y) const {
    std::vector<double> out(y.size(), 0.0);
    for (const auto& t : terms)
      for (std::size_t i = 0; i < y.size(); ++i) out[i] += t.coefficient * y[t.permutation[i]];
    return out;
  }

  double coefficient_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.coefficient;
    return s;
  }
};

/// Doubly stochastic D with D·sort↓(y) = sort↓(x), as a product of at most
/// n−1 T-transforms (each a convex combination of I and a transposition).
inline DoublyStochastic hlp_transfer(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("majorization needs vectors of equal length");
  if (!majorizes(x, y)) throw NotMajorized("x is not majorized by y");
  const std::size_t n = x.size();
  const auto target = detail::sorted_descending(x);
  auto current = detail::sorted_descending(y);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    // largest j with current_j > target_j, then the first k > j with current_k < target_k
    std::size_t j = n;
    for (std::size_t i = n; i-- > 0;) {
      if (current[i] > target[i] + kTolerance) {
        j = i;
        break;
      }
    }
    if (j == n) break;
    std::size_t k = n;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (current[i] < target[i] - kTolerance) {
        k = i;
        break;
      }
    }
    if (k == n) break;
    const double delta = std::min(current[j] - target[j], target[k] - current[k]);
    // T = t·I + (1−t)·Q_{jk} moves delta from coordinate j to coordinate k.
    const double t = 1.0 - delta / (current[j] - current[k]);
    const double cj = current[j], ck = current[k];
    current[j] = t * cj + (1.0 - t) * ck;
    current[k] = (1.0 - t) * cj + t * ck;
    for (std::size_t c = 0; c < n; ++c) {
      const double rj = d[j * n + c], rk = d[k * n + c];
      d[j * n + c] = t * rj + (1.0 - t) * rk;
      d[k * n + c] = (1.0 - t) * rj + t * rk;
    }
  }
  return {n, std::move(d)};
}

namespace detail {

inline constexpr double kMatchingThreshold = 1e-12;

/// Perfect matching rows→columns on entries above the threshold (Kuhn's
/// augmenting paths). Returns an empty vector if none exists.
inline std::vector<std::size_t> perfect_matching(const std::vector<double>& m, std::size_t n) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_of_col(n, kNone);
  std::vector<char> seen(n);
  std::function<bool(std::size_t)> augment = [&](std::size_t row) {
    for (std::size_t col = 0; col < n; ++col) {
      if (m[row * n + col] <= kMatchingThreshold || seen[col]) continue;
      seen[col] = 1;
      if (row_of_col[col] == kNone || augment(row_of_col[col])) {
        row_of_col[col] = row;
        return true;
      }
    }
    return false;
  };
  for (std::size_t row = 0; row < n; ++row) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(row)) return {};
  }
  std::vector<std::size_t> col_of_row(n);
  for (std::size_t col = 0; col < n; ++col) col_of_row[row_of_col[col]] = col;
  return col_of_row;
}

}  // namespace detail

/// Greedy Birkhoff-von Neumann decomposition: repeatedly peel off a
/// permutation supported on the positive entries with weight equal to its
/// smallest matched entry. At most n²−n+1 terms.
inline BirkhoffDecomposition birkhoff_decompose(const DoublyStochastic& ds) {
  const std::size_t n = ds.size();
  std::vector<double> residual(ds.entries().begin(), ds.entries().end());
  BirkhoffDecomposition out;
  const std::size_t max_terms = n * n - n + 1;
  while (*std::max_element(residual.begin(), residual.end()) > kTolerance) {
    const auto perm = detail::perfect_matching(residual, n);
    if (perm.empty()) throw NoPerfectMatching("residual has no perfect matching on its support");
    double c = residual[perm[0]];
    for (std::size_t i = 0; i < n; ++i) c = std::min(c, residual[i * n + perm[i]]);
    for (std::size_t i = 0; i < n; ++i) {
      double& v = residual[i * n + perm[i]];
      v -= c;
      if (v <= detail::kMatchingThreshold) v = 0.0;
    }
    out.terms.push_back({c, perm});
    if (out.terms.size() > max_terms) throw InternalError("Birkhoff decomposition exceeded n^2-n+1 terms");
  }
  return out;
}

/// Ky Fan: Σ_{i≤k} λ_i(A+B) ≤ Σ_{i≤k} (λ_i(A) + λ_i(B)) for all k, with
/// equality at k = n; i.e. λ(A+B) ≺ λ(A) + λ(B). Tolerance 1e-8.
inline bool ky_fan_check(const linalg::HermitianMatrix& a, const linalg::HermitianMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("Ky Fan check needs matrices of equal size");
  const auto sum = (a + b).eigenvalues();
  const auto& la = a.eigenvalues();
  const auto& lb = b.eigenvalues();
  constexpr double tol = 1e-8;
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    lhs += sum[k];
    rhs += la[k] + lb[k];
    if (lhs > rhs + tol) return false;
  }
  return std::abs(lhs - rhs) <= tol;
}

namespace detail {
inline constexpr std::uint64_t kPairStream = 0x6d616a6f72ULL;
inline constexpr int kSinkhornIterations = 200;

/// Random positive matrix balanced to doubly stochastic by alternating
/// row and column normalization.
inline std::vector<double> sinkhorn_matrix(std::size_t n, std::uint64_t seed) {
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) m[i] = rng::uniform(seed, kPairStream, n + i);
  for (int it = 0; it < kSinkhornIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i * n + j];
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] /= s;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += m[i * n + j];
      for (std::size_t i = 0; i < n; ++i) m[i * n + j] /= s;
    }
  }
  return m;
}
}  // namespace detail

/// x = D y for a random doubly stochastic D; x ≺ y.
inline std::vector<double> majorized_by(std::span<const double> y, std::uint64_t seed) {
  const std::size_t n = y.size();
  const auto m = detail::sinkhorn_matrix(n, seed);
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i] += m[i * n + j] * y[j];
  return x;
}

/// Random y with entries uniform in [−1, 1] and x = D y ≺ y.
inline std::pair<std::vector<double>, std::vector<double>> majorization_pair_generator(std::size_t n,
                                                                                       std::uint64_t seed) {
  if (n < 2) throw OutOfRange("pair generator needs n >= 2");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * rng::uniform(seed, detail::kPairStream, i) - 1.0;
  auto x = majorized_by(y, seed);
  return {std::move(x), std::move(y)};
}

}  // namespace specnorm::majorization
