#pragma once

// Dense complex matrices, Hermitian eigenvalues by cyclic Jacobi, trace words
// in Z and Z*, and seeded random test matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specnorm/errors.hpp"
#include "specnorm/numeric.hpp"

namespace specnorm::linalg {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 64;

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) { check_dimension(n); }

  ComplexMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
    check_dimension(n);
    if (data_.size() != n * n) {
      throw DimensionMismatch("expected " + std::to_string(n * n) + " entries, got " +
                              std::to_string(data_.size()));
    }
    for (const Complex& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidParameter("matrix entries must be finite");
      }
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : ComplexMatrix(rows.size(), flatten(rows)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t size() const { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same(a, b);
    const std::size_t n = a.n_;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend ComplexMatrix operator*(Complex c, ComplexMatrix a) {
    for (Complex& z : a.data_) z *= c;
    return a;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  static void check_dimension(std::size_t n) {
    if (n == 0 || n > kMaxDimension) {
      throw OutOfRange("matrix dimension must be in [1, " + std::to_string(kMaxDimension) +
                       "], got " + std::to_string(n));
    }
  }

  static void check_same(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("operands have different dimensions");
  }

  static std::vector<Complex> flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<Complex> out;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw DimensionMismatch("matrix literal is not square");
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }

  std::size_t n_;
  std::vector<Complex> data_;
};

/// Eigenvalues sorted λ₁ ≥ … ≥ λ_n.
class EigenSpectrum {
 public:
  explicit EigenSpectrum(std::vector<double> values) : values_(std::move(values)) {
    if (!std::is_sorted(values_.begin(), values_.end(), std::greater<>{})) {
      throw InvalidParameter("spectrum must be sorted in nonincreasing order");
    }
  }

  /// Sorts arbitrary real values into spectrum order.
  static EigenSpectrum from_unsorted(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), std::greater<>{});
    return EigenSpectrum(std::move(values));
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

 private:
  std::vector<double> values_;
};

class HermitianMatrix;
EigenSpectrum hermitian_eigenvalues(const HermitianMatrix& a);

/// Validated Hermitian matrix. The stored matrix is exactly Hermitian
/// ((A + A*)/2 of the input); the spectrum is computed once on demand and
/// shared between copies.
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit HermitianMatrix(const ComplexMatrix& m) : inner_(m.size()) {
    const std::size_t n = m.size();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    if (asym > kTolerance * (1.0 + m.max_abs())) {
      throw NotHermitian("max |A[i][j] - conj(A[j][i])| = " + std::to_string(asym));
    }
    for (std::size_t i = 0; i < n; ++i) {
      inner_(i, i) = m(i, i).real();
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
        inner_(i, j) = avg;
        inner_(j, i) = std::conj(avg);
      }
    }
  }

  static HermitianMatrix diagonal(std::span<const double> values) {
    return HermitianMatrix(ComplexMatrix::diagonal(values));
  }

  const ComplexMatrix& matrix() const { return inner_; }
  std::size_t size() const { return inner_.size(); }

  const EigenSpectrum& eigenvalues() const {
    std::call_once(cache_->flag, [this] { cache_->spectrum.emplace(hermitian_eigenvalues(*this)); });
    return *cache_->spectrum;
  }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.inner_ + b.inner_);
  }
  friend HermitianMatrix operator*(double c, const HermitianMatrix& a) {
    return HermitianMatrix(Complex(c) * a.inner_);
  }

 private:
  struct Cache {
    std::once_flag flag;
    std::optional<EigenSpectrum> spectrum;
  };

  ComplexMatrix inner_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct Eigensystem {
  EigenSpectrum values;
  ComplexMatrix vectors;  ///< column k pairs with values[k]
};

inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic two-sided complex Jacobi. Converged when the off-diagonal
/// Frobenius mass is at most 1e-12 ‖A‖_F.
inline Eigensystem hermitian_eigensystem(const HermitianMatrix& herm) {
  const std::size_t n = herm.size();
  ComplexMatrix a = herm.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = 1e-12 * a.frobenius_norm();

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal() <= tol) {
      converged = true;
      break;
    }
    if (sweep == kMaxJacobiSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const Complex phase = std::conj(a(p, q) / g);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // 2x2 block of the unitary U = diag(1, phase) * [[c, s], [-s, c]].
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged) {
    throw NoConvergence("Jacobi did not converge within " + std::to_string(kMaxJacobiSweeps) +
                        " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  std::vector<double> values(n);
  ComplexMatrix vectors(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
  return {EigenSpectrum(std::move(values)), std::move(vectors)};
}

inline EigenSpectrum hermitian_eigenvalues(const HermitianMatrix& a) {
  return hermitian_eigensystem(a).values;
}

enum class Mark : std::uint8_t { plain, adjoint };

/// tr(W₁W₂⋯W_k) with W_j = Z for a plain mark and Z* for an adjoint mark.
inline Complex trace_word(const ComplexMatrix& z, std::span<const Mark> word) {
  if (word.empty()) throw EmptyWord("trace word must contain at least one factor");
  const ComplexMatrix zstar = z.adjoint();
  auto factor = [&](Mark m) -> const ComplexMatrix& { return m == Mark::plain ? z : zstar; };
  if (word.size() == 1) return factor(word[0]).trace();

  ComplexMatrix prod = factor(word[0]);
  for (std::size_t k = 1; k + 1 < word.size(); ++k) prod = prod * factor(word[k]);
  // tr(P W) without forming the last product
  const ComplexMatrix& last = factor(word.back());
  const std::size_t n = z.size();
  Complex t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += prod(i, j) * last(j, i);
  return t;
}

namespace detail {
// Stream tags keep the generators below statistically independent for equal seeds.
inline constexpr std::uint64_t kUnitaryStream = 0x756e6974617279ULL;
inline constexpr std::uint64_t kHermitianStream = 0x6865726d6974ULL;
inline constexpr std::uint64_t kComplexStream = 0x636f6d706c6578ULL;
}  // namespace detail

/// Haar unitary: Gram-Schmidt (applied twice) on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  ComplexMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t pos = 2 * (i * n + j);
      u(i, j) = Complex(rng::standard_normal(seed, detail::kUnitaryStream, pos),
                        rng::standard_normal(seed, detail::kUnitaryStream, pos + 1));
    }
  for (std::size_t col = 0; col < n; ++col) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < col; ++prev) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, prev)) * u(i, col);
        for (std::size_t i = 0; i < n; ++i) u(i, col) -= dot * u(i, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, col));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) u(i, col) /= norm;
  }
  return u;
}

/// General complex matrix with real and imaginary parts uniform in [-scale, scale].
inline ComplexMatrix random_complex(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  if (!(scale >= 0.0)) throw InvalidParameter("scale must be nonnegative");
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t pos = i * n + j;
      g(i, j) = Complex(scale * (2.0 * rng::uniform(seed, detail::kComplexStream, pos, 0) - 1.0),
                        scale * (2.0 * rng::uniform(seed, detail::kComplexStream, pos, 1) - 1.0));
    }
  return g;
}

/// (G + G*)/2 with G uniform in [-scale, scale]² entrywise.
inline HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  if (!(scale >= 0.0)) throw InvalidParameter("scale must be nonnegative");
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t pos = i * n + j;
      g(i, j) = Complex(scale * (2.0 * rng::uniform(seed, detail::kHermitianStream, pos, 0) - 1.0),
                        scale * (2.0 * rng::uniform(seed, detail::kHermitianStream, pos, 1) - 1.0));
    }
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

/// U* A U.
inline ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& u) {
  return u.adjoint() * a * u;
}

inline HermitianMatrix conjugate_by(const HermitianMatrix& a, const ComplexMatrix& u) {
  return HermitianMatrix(conjugate_by(a.matrix(), u));
}

}  // namespace specnorm::linalg
