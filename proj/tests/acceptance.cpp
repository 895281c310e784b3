// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "specnorm/specnorm.hpp"

using namespace specnorm;
using distributions::Distribution;
using linalg::HermitianMatrix;
using norms::NormSpec;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what, double seconds) {
  std::printf("[%s] %s %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Runs `body`, which returns {passed, description}; exceptions count as failures.
void criterion(const char* id, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string what;
  try {
    std::tie(ok, what) = body();
  } catch (const std::exception& e) {
    what = std::string("threw: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, ok, what, secs);
}

std::vector<HermitianMatrix> test_matrices() {
  std::vector<HermitianMatrix> out;
  for (std::uint64_t k = 0; k < 50; ++k) out.push_back(linalg::random_hermitian(1 + k % 5, 1000 + k));
  return out;
}

std::vector<Distribution> triple_distributions() {
  return {Distribution::normal(1, 2), Distribution::exponential(), Distribution::bernoulli(0.3)};
}

std::string suite_summary(const verify::Report& r, std::initializer_list<const char*> names, bool& ok) {
  std::string s;
  ok = true;
  for (const char* n : names) {
    const auto* p = r.find(n);
    if (!p) {
      ok = false;
      s += std::string(n) + "=missing ";
      continue;
    }
    ok = ok && p->passed;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%s(dev %.2g, n %zu) ", n, p->passed ? "ok" : "FAILED", p->max_deviation,
                  p->checks);
    s += buf;
  }
  if (!s.empty()) s.pop_back();
  return s;
}

}  // namespace

int main() {
  const auto mats = test_matrices();

  criterion("AC1", [&] {
    double worst = 0.0;
    for (const auto& a : mats)
      for (const auto& dist : triple_distributions())
        for (int d : {2, 4, 6, 8}) {
          const NormSpec spec(dist, d);
          const double part = norms::norm_exact_partition(a, spec);
          const double bell = norms::norm_exact_bell(a, spec);
          const double fact = static_cast<double>(combinatorics::factorial(d));
          const double moment_d = fact * distributions::mgf_product_coefficient(dist, a.eigenvalues().values(), d);
          const double series = std::pow(moment_d / fact, 1.0 / d);
          worst = std::max({worst, relative_difference(bell, part), relative_difference(series, part)});
        }
    return std::pair{worst <= 1e-9, fmt("engine triple agreement: max rel dev %.3g (tol %.0e)", worst, 1e-9)};
  });

  criterion("AC2", [&] {
    int trials = 0, within = 0;
    const auto dists = triple_distributions();
    for (std::size_t di = 0; di < dists.size(); ++di)
      for (int d : {2, 4})
        for (std::size_t m = 0; m < 10; ++m) {
          const auto& a = mats[di * 10 + m];
          const NormSpec spec(dists[di], d);
          const auto est = norms::norm_mc(a.eigenvalues(), spec, 1000000, 5000 + trials);
          const double exact = norms::norm_exact_partition(a, spec);
          ++trials;
          if (std::abs(est.value - exact) <= 4.0 * est.std_error) ++within;
        }
    const double frac = static_cast<double>(within) / trials;
    return std::pair{trials == 60 && frac >= 0.95,
                     fmt("Monte Carlo within 4 stderr of exact: %.0f of 60 trials (need %.0f)", within, 57)};
  });

  criterion("AC3", [&] {
    double worst = 0.0;
    for (const auto& a : mats)
      for (double mu : {-1.0, 0.0, 2.0})
        for (double sigma : {0.5, 1.0, 3.0})
          for (int d : {2, 4, 6}) {
            const double cf = norms::closed_form_normal(a, mu, sigma, d);
            const double en = norms::norm_exact_partition(a, NormSpec(Distribution::normal(mu, sigma), d));
            worst = std::max(worst, relative_difference(cf, en));
          }
    return std::pair{worst <= 1e-9, fmt("normal closed form vs engine: max rel dev %.3g (tol %.0e)", worst, 1e-9)};
  });

  criterion("AC4", [&] {
    double worst_h = 0.0, worst_z = 0.0;
    for (const auto& a : mats)
      for (int d = 2; d <= 8; d += 2) {
        const double e = norms::norm_exact_partition(a, NormSpec(Distribution::exponential(), d));
        worst_h = std::max(worst_h, relative_difference(std::pow(e, d),
                                                        combinatorics::complete_homogeneous(a.eigenvalues().values(), d)));
      }
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto z = linalg::random_complex(1 + k % 4, 7000 + k);
      const double lhs = std::pow(extension::norm_extended(z, Distribution::exponential(), 4), 4);
      worst_z = std::max(worst_z, relative_difference(lhs, oracles::exponential_d4_trace_polynomial(z)));
    }
    return std::pair{worst_h <= 1e-9 && worst_z <= 1e-9,
                     fmt("exponential: norm^d vs h_d max rel dev %.3g; d=4 trace polynomial max rel dev %.3g (tol 1e-09)",
                         worst_h, worst_z)};
  });

  criterion("AC5", [&] {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto a = linalg::random_hermitian(1 + k % 4, 8000 + k);
      for (double q : {0.2, 0.5, 0.8})
        for (int d : {2, 4, 6}) {
          const double cf = norms::closed_form_bernoulli(a.eigenvalues(), q, d);
          const double en = norms::norm_exact_partition(a, NormSpec(Distribution::bernoulli(q), d));
          worst = std::max(worst, relative_difference(cf, en));
        }
    }
    return std::pair{worst <= 1e-9, fmt("bernoulli closed form vs engine: max rel dev %.3g (tol %.0e)", worst, 1e-9)};
  });

  criterion("AC6", [&] {
    const double sq = std::pow(norms::closed_form_pareto_2x2(1, 1, 4), 2);
    const double dev_ref = std::abs(sq - 34.0 / 9.0);
    double worst = 0.0;
    for (double alpha : {2.1, 3.0, 4.0, 10.0})
      for (std::uint64_t k = 0; k < 20; ++k) {
        const auto a = linalg::random_hermitian(2, 9000 + k);
        const auto& l = a.eigenvalues();
        worst = std::max(worst, relative_difference(norms::closed_form_pareto_2x2(l[0], l[1], alpha),
                                                    norms::norm_exact_partition(a, NormSpec(Distribution::pareto(alpha), 2))));
      }
    return std::pair{dev_ref <= 1e-12 && worst <= 1e-12,
                     fmt("pareto: |norm^2 - 34/9| = %.3g; engine vs formula max rel dev %.3g (tol 1e-12)", dev_ref,
                         worst)};
  });

  criterion("AC7", [&] {
    bool ok_a = false, ok_e = false;
    const auto sa = suite_summary(verify::run_verify("axioms"),
                                  {"homogeneity", "triangle_inequality", "positive_definiteness",
                                   "weak_unitary_invariance"},
                                  ok_a);
    const auto se = suite_summary(verify::run_verify("extension"),
                                  {"restriction_to_hermitian", "complex_homogeneity", "triangle_inequality",
                                   "positive_definiteness", "weak_unitary_invariance"},
                                  ok_e);
    return std::pair{ok_a && ok_e, "norm axioms: hermitian [" + sa + "] extension [" + se + "]"};
  });

  const auto maj = verify::run_verify("majorization");

  criterion("AC8", [&] {
    bool ok = false;
    const auto s = suite_summary(maj, {"ky_fan", "hlp_birkhoff_chain", "birkhoff_term_bound"}, ok);
    return std::pair{ok, "majorization chain: " + s};
  });

  criterion("AC9", [&] {
    bool ok = false;
    const auto s = suite_summary(maj, {"schur_convexity"}, ok);
    return std::pair{ok, "schur convexity: " + s};
  });

  criterion("AC10", [&] {
    bool ok = false;
    const auto s = suite_summary(verify::run_verify("figures"),
                                 {"normal_d2_round", "exact_tables_match_bell_engine", "figure_tables_generated",
                                  "table_invariants", "csv_round_trip"},
                                 ok);
    return std::pair{ok, "figure tables: " + s};
  });

  criterion("AC11", [&] {
    bool ok = false;
    const auto s = suite_summary(verify::run_verify("continuity"), {"max_adjacent_jump"}, ok);
    return std::pair{ok, "continuity scan: " + s};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
