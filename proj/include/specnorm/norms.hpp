#pragma once

// The random-vector norm ‖A‖_{X,d} on Hermitian matrices:
//   Monte Carlo   (E|⟨X,λ⟩|^d / Γ(d+1))^{1/d}, any real d >= 1
//   Bell form     ((1/d!) B_d(κ₁p₁, …, κ_d p_d))^{1/d}, even d
//   partition form (Σ_{π⊢d} κ_π p_π / y_π)^{1/d}, even d
// plus the closed forms for normal, Bernoulli and 2x2 Pareto entries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specnorm/combinatorics.hpp"
#include "specnorm/distributions.hpp"
#include "specnorm/errors.hpp"
#include "specnorm/linalg.hpp"
#include "specnorm/numeric.hpp"

namespace specnorm::norms {

using distributions::Distribution;
using linalg::EigenSpectrum;
using linalg::HermitianMatrix;

struct NormEstimate {
  double value = 0.0;
  double std_error = 0.0;  ///< delta-method standard error of `value`
  std::size_t samples = 0;
};

/// Distribution together with the exponent d >= 1.
class NormSpec {
 public:
  NormSpec(Distribution dist, double d) : dist_(std::move(dist)), d_(d) {
    if (!(d >= 1.0) || !std::isfinite(d)) throw InvalidParameter("exponent d must be a finite real >= 1");
  }

  const Distribution& dist() const { return dist_; }
  double d() const { return d_; }

  /// d as an integer for the exact engines; requires d even, d <= 20, and
  /// the first d moments to exist.
  int even_degree() const {
    if (!is_even_integer(d_)) throw OddExponent("exact engines need an even integer d >= 2");
    if (d_ > combinatorics::kMaxPartitionDegree) throw OutOfRange("exact engines support d <= 20");
    if (!dist_.has_moment(d_)) throw MomentDoesNotExist(dist_.label() + " lacks moments of order d");
    return static_cast<int>(d_);
  }

 private:
  Distribution dist_;
  double d_;
};

inline constexpr std::size_t kMinSamples = 1000;

namespace detail {

inline constexpr std::size_t kChunkSize = std::size_t{1} << 16;

/// Welford accumulator, merged across chunks in a fixed order (Chan et al.).
struct RunningMoments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    count += 1.0;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * (o.count / total);
    m2 += o.m2 + delta * delta * count * (o.count / total);
    count = total;
  }
};

inline double projection(const Distribution& dist, std::span<const double> lambda, std::uint64_t seed,
                         std::uint64_t index) {
  double y = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] != 0.0) y += lambda[j] * distributions::draw(dist, seed, index, j);
  }
  return y;
}

/// Estimates from y(0), …, y(N−1). Chunks are reduced in index order, so the
/// result depends only on the y values.
template <class YOf>
NormEstimate estimate_from(YOf&& y_of, std::size_t n_samples, double d) {
  RunningMoments total;
  for (std::size_t begin = 0; begin < n_samples; begin += kChunkSize) {
    const std::size_t end = std::min(n_samples, begin + kChunkSize);
    RunningMoments chunk;
    for (std::size_t i = begin; i < end; ++i) chunk.add(std::pow(std::abs(y_of(i)), d));
    total.merge(chunk);
  }
  NormEstimate est;
  est.samples = n_samples;
  const double mean = total.mean;
  if (mean <= 0.0) return est;
  const double sd = std::sqrt(std::max(0.0, total.m2 / (total.count - 1.0)));
  est.value = std::pow(mean / combinatorics::gamma(d + 1.0), 1.0 / d);
  est.std_error = est.value / d * (sd / mean) / std::sqrt(static_cast<double>(n_samples));
  return est;
}

inline void check_mc(const NormSpec& spec, std::size_t n_samples) {
  if (!spec.dist().has_moment(spec.d())) {
    throw MomentDoesNotExist(spec.dist().label() + " lacks moments of order " + std::to_string(spec.d()));
  }
  if (n_samples < kMinSamples) {
    throw TooFewSamples("need at least " + std::to_string(kMinSamples) + " samples");
  }
}

/// p_k(λ) for k = 1..d at index k−1.
template <class T = double>
std::vector<T> power_sums(std::span<const double> lambda, int d) {
  std::vector<T> p(static_cast<std::size_t>(d), T(0));
  for (double l : lambda) {
    T power = 1;
    for (int k = 1; k <= d; ++k) {
      power *= l;
      p[static_cast<std::size_t>(k - 1)] += power;
    }
  }
  return p;
}

/// The exact engines run in extended precision: for mixed-sign spectra the
/// alternating cumulant terms cancel and double loses up to 8 digits at d = 20.
using Extended = long double;

/// d-th root of a quantity that is nonnegative in exact arithmetic.
/// Negatives within 1e-12 of the term magnitude are rounding and clamp to 0.
inline double root_of_nonnegative(double inner, double magnitude, int d) {
  if (inner < 0.0) {
    if (inner >= -1e-12 * std::max(1.0, magnitude)) return 0.0;
    throw InconsistentResult("norm^d evaluated to " + std::to_string(inner));
  }
  return std::pow(inner, 1.0 / d);
}

}  // namespace detail

/// Monte Carlo estimate of ‖diag(λ)‖_{X,d} from samples 0..N−1 of the seed's stream.
inline NormEstimate norm_mc(std::span<const double> lambda, const NormSpec& spec, std::size_t n_samples,
                            std::uint64_t seed) {
  detail::check_mc(spec, n_samples);
  return detail::estimate_from(
      [&](std::size_t i) { return detail::projection(spec.dist(), lambda, seed, i); }, n_samples,
      spec.d());
}

inline NormEstimate norm_mc(const EigenSpectrum& lambda, const NormSpec& spec, std::size_t n_samples,
                            std::uint64_t seed) {
  return norm_mc(lambda.values(), spec, n_samples, seed);
}

inline double norm_exact_bell(std::span<const double> lambda, const NormSpec& spec) {
  using detail::Extended;
  const int d = spec.even_degree();
  const auto kappa = distributions::detail::cumulants_as<Extended>(spec.dist(), d);
  const auto p = detail::power_sums<Extended>(lambda, d);
  std::vector<Extended> x(static_cast<std::size_t>(d)), x_abs(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = kappa[k] * p[k];
    x_abs[k] = std::abs(x[k]);
  }
  const Extended fact = static_cast<Extended>(combinatorics::factorial(d));
  const auto bell = combinatorics::detail::complete_bell_as<Extended>(x);
  const auto bell_abs = combinatorics::detail::complete_bell_as<Extended>(x_abs);
  return detail::root_of_nonnegative(static_cast<double>(bell / fact), static_cast<double>(bell_abs / fact), d);
}

inline double norm_exact_bell(const HermitianMatrix& a, const NormSpec& spec) {
  return norm_exact_bell(a.eigenvalues().values(), spec);
}

inline double norm_exact_partition(std::span<const double> lambda, const NormSpec& spec) {
  using detail::Extended;
  const int d = spec.even_degree();
  const auto kappa = distributions::detail::cumulants_as<Extended>(spec.dist(), d);
  const auto p = detail::power_sums<Extended>(lambda, d);
  BasicCompensatedSum<Extended> sum;
  Extended magnitude = 0;
  for (const auto& pi : combinatorics::cached_partitions(d)) {
    Extended term = 1;
    for (int part : pi.parts()) {
      const auto j = static_cast<std::size_t>(part - 1);
      term *= kappa[j] * p[j];
    }
    term /= static_cast<Extended>(pi.y());
    sum.add(term);
    magnitude += std::abs(term);
  }
  return detail::root_of_nonnegative(static_cast<double>(sum.value()), static_cast<double>(magnitude), d);
}

inline double norm_exact_partition(const HermitianMatrix& a, const NormSpec& spec) {
  return norm_exact_partition(a.eigenvalues().values(), spec);
}

/// Normal(μ, σ²) entries, even d:
///   ‖A‖^d = Σ_{k=0}^{d/2} μ^{2k}(tr A)^{2k}/(2k)! · σ^{d−2k}‖A‖_F^{d−2k} / (2^{d/2−k}(d/2−k)!)
inline double closed_form_normal_from(double trace, double frobenius, double mu, double sigma, int d) {
  if (d < 2 || d % 2 != 0) throw OddExponent("normal closed form needs an even d >= 2");
  if (d > combinatorics::kMaxPartitionDegree) throw OutOfRange("normal closed form supports d <= 20");
  if (!(sigma > 0.0)) throw InvalidParameter("sigma must be positive");
  const int half = d / 2;
  double sum = 0.0;
  for (int k = 0; k <= half; ++k) {
    const double mean_part = std::pow(mu * trace, 2 * k) / static_cast<double>(combinatorics::factorial(2 * k));
    const double spread_part = std::pow(sigma * frobenius, d - 2 * k) /
                               (std::pow(2.0, half - k) * static_cast<double>(combinatorics::factorial(half - k)));
    sum += mean_part * spread_part;
  }
  return std::pow(sum, 1.0 / d);
}

inline double closed_form_normal(const HermitianMatrix& a, double mu, double sigma, int d) {
  return closed_form_normal_from(a.matrix().trace().real(), a.matrix().frobenius_norm(), mu, sigma, d);
}

inline double closed_form_normal(std::span<const double> lambda, double mu, double sigma, int d) {
  double trace = 0.0, sq = 0.0;
  for (double l : lambda) {
    trace += l;
    sq += l * l;
  }
  return closed_form_normal_from(trace, std::sqrt(sq), mu, sigma, d);
}

inline constexpr std::size_t kMaxBernoulliVariables = 6;
inline constexpr int kMaxBernoulliDegree = 10;

/// Bernoulli(q) entries, even d:
///   ‖λ‖^d = (1/d!) Σ_{i₁+…+i_n=d} C(d; i₁,…,i_n) q^{|I|} λ₁^{i₁}⋯λ_n^{i_n},  |I| = #{k : i_k ≠ 0}.
inline double closed_form_bernoulli(std::span<const double> lambda, double q, int d) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("bernoulli needs 0 < q < 1");
  if (d < 2 || d % 2 != 0) throw OddExponent("bernoulli closed form needs an even d >= 2");
  if (lambda.size() > kMaxBernoulliVariables || d > kMaxBernoulliDegree || lambda.empty()) {
    throw OutOfRange("bernoulli closed form needs 1 <= n <= 6 and d <= 10");
  }
  const std::size_t n = lambda.size();
  std::vector<int> counts(n, 0);
  CompensatedSum sum;
  double magnitude = 0.0;
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == n) {
      counts[pos] = remaining;
      double term = combinatorics::multinomial(counts);
      for (std::size_t k = 0; k < n; ++k) {
        if (counts[k] != 0) term *= q * std::pow(lambda[k], counts[k]);
      }
      sum.add(term);
      magnitude += std::abs(term);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, d);
  const double fact = static_cast<double>(combinatorics::factorial(d));
  return detail::root_of_nonnegative(sum.value() / fact, magnitude / fact, d);
}

inline double closed_form_bernoulli(const EigenSpectrum& lambda, double q, int d) {
  return closed_form_bernoulli(lambda.values(), q, d);
}

/// Pareto(α, x_m = 1) entries, n = 2, d = 2:
///   ‖A‖² = (α/2)(λ₁²/(α−2) + 2αλ₁λ₂/(α−1)² + λ₂²/(α−2)).
inline double closed_form_pareto_2x2(double lambda1, double lambda2, double alpha) {
  if (!(alpha > 2.0)) throw AlphaTooSmall("pareto d = 2 closed form needs alpha > 2");
  const double inner = 0.5 * alpha *
                       (lambda1 * lambda1 / (alpha - 2.0) +
                        2.0 * alpha * lambda1 * lambda2 / ((alpha - 1.0) * (alpha - 1.0)) +
                        lambda2 * lambda2 / (alpha - 2.0));
  return std::sqrt(std::max(0.0, inner));
}

/// norm_mc at each d of an ascending grid, all sharing the sample indices
/// 0..N−1 of one seed. Entry k equals norm_mc(λ, {dist, grid[k]}, N, seed) exactly.
inline std::vector<NormEstimate> continuity_scan(std::span<const double> lambda, const Distribution& dist,
                                                 std::span<const double> d_grid, std::size_t n_samples,
                                                 std::uint64_t seed) {
  if (d_grid.empty()) return {};
  if (!std::is_sorted(d_grid.begin(), d_grid.end())) throw InvalidParameter("d grid must be ascending");
  for (double d : d_grid) detail::check_mc(NormSpec(dist, d), n_samples);

  std::vector<double> y(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) y[i] = detail::projection(dist, lambda, seed, i);

  std::vector<NormEstimate> out;
  out.reserve(d_grid.size());
  for (double d : d_grid) out.push_back(detail::estimate_from([&](std::size_t i) { return y[i]; }, n_samples, d));
  return out;
}

inline std::vector<NormEstimate> continuity_scan(const HermitianMatrix& a, const Distribution& dist,
                                                 std::span<const double> d_grid, std::size_t n_samples,
                                                 std::uint64_t seed) {
  return continuity_scan(a.eigenvalues().values(), dist, d_grid, n_samples, seed);
}

}  // namespace specnorm::norms
