// Evaluates one Hermitian matrix through every engine and prints the results.

#include <cstdio>

#include "specnorm/specnorm.hpp"

int main() {
  using namespace specnorm;
  using distributions::Distribution;

  const linalg::HermitianMatrix a(linalg::ComplexMatrix{{2.0, {0.0, 1.0}}, {{0.0, -1.0}, 2.0}});
  const auto& lambda = a.eigenvalues();
  std::printf("eigenvalues: %.6f %.6f\n", lambda[0], lambda[1]);

  const norms::NormSpec spec(Distribution::exponential(), 4);
  std::printf("Bell form      %.15f\n", norms::norm_exact_bell(a, spec));
  std::printf("partition form %.15f\n", norms::norm_exact_partition(a, spec));
  std::printf("extension      %.15f\n", extension::norm_extended(a.matrix(), Distribution::exponential(), 4));
  const auto est = norms::norm_mc(lambda, spec, 200000, 7);
  std::printf("Monte Carlo    %.6f +- %.6f\n", est.value, est.std_error);

  const auto z = linalg::ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}};
  std::printf("nilpotent Z, normal d=2: %.15f\n", extension::norm_extended(z, Distribution::normal(0, 1), 2));
  return 0;
}
