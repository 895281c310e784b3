#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace specnorm {

/// Neumaier-compensated running sum. Addition order fixes the result bit-for-bit.
template <class T>
class BasicCompensatedSum {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

/// True when `d` is an even integer >= 2.
inline bool is_even_integer(double d) {
  return d >= 2.0 && std::floor(d) == d && std::fmod(d, 2.0) == 0.0;
}

inline double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

namespace rng {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based hash: the same (seed, index, position, lane) always maps to
/// the same word, independent of evaluation order.
constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index,
                                     std::uint64_t position, std::uint64_t lane) {
  std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dULL);
  h = mix64(h ^ index);
  h = mix64(h ^ (position * 4 + lane));
  return mix64(h);
}

/// Uniform double on the open interval (0, 1).
constexpr double uniform(std::uint64_t seed, std::uint64_t index,
                         std::uint64_t position, std::uint64_t lane = 0) {
  const std::uint64_t bits = counter_bits(seed, index, position, lane) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Standard normal by Box-Muller (cosine branch); consumes lanes 0 and 1.
inline double standard_normal(std::uint64_t seed, std::uint64_t index, std::uint64_t position) {
  const double u1 = uniform(seed, index, position, 0);
  const double u2 = uniform(seed, index, position, 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng
}  // namespace specnorm
