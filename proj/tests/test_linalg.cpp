#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "specnorm/linalg.hpp"
#include "specnorm/oracles.hpp"

using namespace specnorm;
using namespace specnorm::linalg;

namespace {

double residual_norm(const ComplexMatrix& a, const Eigensystem& es, std::size_t k) {
  const std::size_t n = a.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex av = 0.0;
    for (std::size_t j = 0; j < n; ++j) av += a(i, j) * es.vectors(j, k);
    s += std::norm(av - es.values[k] * es.vectors(i, k));
  }
  return std::sqrt(s);
}

double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::identity(u.size())).frobenius_norm();
}

}  // namespace

TEST(Eigenvalues, DiagonalIsSorted) {
  const std::vector<double> d{3, 1, 2};
  const auto s = hermitian_eigenvalues(HermitianMatrix::diagonal(d));
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), (std::vector<double>{3, 2, 1}));
}

TEST(Eigenvalues, SwapMatrix) {
  const auto s = hermitian_eigenvalues(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_NEAR(s[0], 1.0, 1e-14);
  EXPECT_NEAR(s[1], -1.0, 1e-14);
}

TEST(Eigenvalues, ComplexOffDiagonal) {
  const auto s = hermitian_eigenvalues(HermitianMatrix(ComplexMatrix{{2.0, {0, 1}}, {{0, -1}, 2.0}}));
  EXPECT_NEAR(s[0], 3.0, 1e-14);
  EXPECT_NEAR(s[1], 1.0, 1e-14);
}

TEST(Eigenvalues, ZeroMatrix) {
  const auto s = hermitian_eigenvalues(HermitianMatrix(ComplexMatrix(4)));
  for (double v : s.values()) EXPECT_EQ(v, 0.0);
}

TEST(Eigenvalues, RejectsNonHermitian) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
  EXPECT_THROW(HermitianMatrix(ComplexMatrix{{{0, 1}, 0.0}, {0.0, 0.0}}), NotHermitian);
}

TEST(Eigenvalues, AcceptsRoundoffAsymmetry) {
  EXPECT_NO_THROW(HermitianMatrix(ComplexMatrix{{1.0, 1.0 + 1e-14}, {1.0, 1.0}}));
}

TEST(Eigenvalues, DimensionCap) {
  EXPECT_THROW(ComplexMatrix(65), OutOfRange);
  EXPECT_THROW(ComplexMatrix(0), OutOfRange);
  EXPECT_NO_THROW(ComplexMatrix(64));
}

TEST(Eigenvalues, RandomResidualsTraceAndOrder) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto a = random_hermitian(n, seed, 2.0);
    const auto es = hermitian_eigensystem(a);
    const double fro = a.matrix().frobenius_norm();
    for (std::size_t k = 0; k < n; ++k) EXPECT_LE(residual_norm(a.matrix(), es, k), 1e-8 * fro);
    double abs_sum = 0.0;
    for (double v : es.values.values()) abs_sum += std::abs(v);
    EXPECT_NEAR(es.values.sum(), a.matrix().trace().real(), 1e-9 * (1.0 + abs_sum));
    for (std::size_t k = 1; k < n; ++k) EXPECT_GE(es.values[k - 1], es.values[k]);
    EXPECT_LE(unitarity_defect(es.vectors), 1e-10);
  }
}

TEST(Eigenvalues, LargestSupportedDimension) {
  const auto a = random_hermitian(64, 99);
  const auto es = hermitian_eigensystem(a);
  EXPECT_LE(residual_norm(a.matrix(), es, 0), 1e-8 * a.matrix().frobenius_norm());
}

TEST(Eigenvalues, TwoByTwoMatchesQuadraticFormula) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto a = random_hermitian(2, seed, 3.0);
    const auto& m = a.matrix();
    const auto expected = oracles::eigenvalues_2x2(m(0, 0).real(), m(0, 1), m(1, 1).real());
    const auto& s = a.eigenvalues();
    EXPECT_NEAR(s[0], expected[0], 1e-10);
    EXPECT_NEAR(s[1], expected[1], 1e-10);
  }
}

TEST(Eigenvalues, UnitaryConjugationInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto a = random_hermitian(n, seed);
    const auto u = random_unitary(n, seed + 1000);
    const auto& s1 = a.eigenvalues();
    const auto s2 = conjugate_by(a, u).eigenvalues();
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(s1[k], s2[k], 1e-8);
  }
}

TEST(Eigenvalues, RepeatedEigenvalues) {
  const std::vector<double> d{2, 2, -1, 2};
  const auto u = random_unitary(4, 5);
  const auto a = conjugate_by(HermitianMatrix::diagonal(d), u);
  const auto& s = a.eigenvalues();
  EXPECT_NEAR(s[0], 2, 1e-12);
  EXPECT_NEAR(s[1], 2, 1e-12);
  EXPECT_NEAR(s[2], 2, 1e-12);
  EXPECT_NEAR(s[3], -1, 1e-12);
}

TEST(EigenSpectrum, RejectsUnsorted) {
  EXPECT_THROW(EigenSpectrum({1.0, 2.0}), InvalidParameter);
  EXPECT_EQ(EigenSpectrum::from_unsorted({1.0, 3.0, 2.0})[0], 3.0);
}

TEST(TraceWord, Examples) {
  const std::vector<Mark> pp{Mark::plain, Mark::plain};
  EXPECT_EQ(trace_word(ComplexMatrix::identity(2), pp), Complex(2.0));

  const ComplexMatrix e12{{0.0, 1.0}, {0.0, 0.0}};
  const std::vector<Mark> ap{Mark::adjoint, Mark::plain};
  EXPECT_EQ(trace_word(e12, ap), Complex(1.0));

  const std::vector<Complex> diag{{1, 1}, 2.0};
  const std::vector<Mark> pa{Mark::plain, Mark::adjoint};
  EXPECT_NEAR(std::abs(trace_word(ComplexMatrix::diagonal(diag), pa) - Complex(6.0)), 0.0, 1e-15);
}

TEST(TraceWord, EmptyWordThrows) {
  EXPECT_THROW(trace_word(ComplexMatrix::identity(2), std::span<const Mark>{}), EmptyWord);
}

TEST(TraceWord, PlainPowersAreEigenvaluePowerSums) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const auto a = random_hermitian(n, seed);
    for (std::size_t k = 1; k <= 6; ++k) {
      const std::vector<Mark> word(k, Mark::plain);
      double p = 0.0;
      for (double l : a.eigenvalues().values()) p += std::pow(l, static_cast<double>(k));
      const Complex t = trace_word(a.matrix(), word);
      EXPECT_NEAR(t.real(), p, 1e-9 * (1.0 + std::abs(p)));
      EXPECT_NEAR(t.imag(), 0.0, 1e-9 * (1.0 + std::abs(p)));
    }
  }
}

// tr(W)* = tr(W*): complementing every mark and reversing the word conjugates the trace.
TEST(TraceWord, ComplementReverseConjugates) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const auto z = random_complex(n, seed);
    const std::size_t len = 1 + seed % 7;
    std::vector<Mark> word(len), flipped(len);
    for (std::size_t k = 0; k < len; ++k) word[k] = ((seed >> k) & 1U) ? Mark::adjoint : Mark::plain;
    for (std::size_t k = 0; k < len; ++k) {
      flipped[len - 1 - k] = word[k] == Mark::plain ? Mark::adjoint : Mark::plain;
    }
    const Complex a = trace_word(z, word);
    const Complex b = trace_word(z, flipped);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST(RandomUnitary, OneByOneHasUnitModulus) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_NEAR(std::abs(random_unitary(1, seed)(0, 0)), 1.0, 1e-12);
  }
}

TEST(RandomUnitary, IsUnitaryAndDeterministic) {
  EXPECT_LE(unitarity_defect(random_unitary(3, 7)), 1e-10);
  EXPECT_EQ(random_unitary(3, 7), random_unitary(3, 7));
  EXPECT_FALSE(random_unitary(3, 7) == random_unitary(3, 8));
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_LE(unitarity_defect(random_unitary(n, n)), 1e-10);
}

TEST(RandomHermitian, ContractAndDeterminism) {
  EXPECT_NO_THROW(random_hermitian(2, 1));
  EXPECT_EQ(random_hermitian(2, 1, 0.0).matrix(), ComplexMatrix(2));
  EXPECT_EQ(random_hermitian(5, 3, 1.5).matrix(), random_hermitian(5, 3, 1.5).matrix());
  const auto a = random_hermitian(4, 11, 2.0);
  EXPECT_LE(a.matrix().max_abs(), 2.0 * std::sqrt(2.0));
}

TEST(HermitianMatrix, CachedSpectrumSharedByCopies) {
  const auto a = random_hermitian(3, 4);
  const auto copy = a;
  EXPECT_EQ(&a.eigenvalues(), &copy.eigenvalues());
}

TEST(ComplexMatrix, RejectsNonFinite) {
  EXPECT_THROW(ComplexMatrix(1, {Complex(std::nan(""), 0)}), InvalidParameter);
  EXPECT_THROW(ComplexMatrix(2, {1.0, 2.0, 3.0}), DimensionMismatch);
}
