#pragma once

// Verification suites: each property runs a batch of seeded random checks
// and records the number of checks and the worst deviation seen.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "specnorm/circle.hpp"
#include "specnorm/combinatorics.hpp"
#include "specnorm/distributions.hpp"
#include "specnorm/extension.hpp"
#include "specnorm/linalg.hpp"
#include "specnorm/majorization.hpp"
#include "specnorm/norms.hpp"
#include "specnorm/oracles.hpp"

namespace specnorm::verify {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; });
  }
  const PropertyResult* find(std::string_view name) const {
    for (const auto& p : properties)
      if (p.name == name) return &p;
    return nullptr;
  }
};

struct Options {
  std::uint64_t seed = 1;
  /// Γ used by the normalization checks; tests swap in a broken one.
  std::function<double(double)> gamma = [](double x) { return combinatorics::gamma(x); };
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms",  "engines", "extension",
                                              "majorization", "figures", "continuity"};
  return names;
}

namespace detail {

using distributions::Distribution;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using norms::NormSpec;

class Property {
 public:
  Property(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
  }

  void deviation(double dev) {
    ++r_.checks;
    if (std::isnan(dev)) {
      r_.passed = false;
      return;
    }
    r_.max_deviation = std::max(r_.max_deviation, dev);
    if (dev > r_.tolerance) r_.passed = false;
  }

  void expect(bool ok) {
    ++r_.checks;
    if (!ok) r_.passed = false;
  }

  void fail(const std::string& why) {
    r_.passed = false;
    if (r_.note.empty()) r_.note = why;
  }

  template <class F>
  void guarded(F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t k) {
  return rng::counter_bits(seed, tag, k, 0);
}

inline std::vector<Distribution> engine_distributions() {
  return {Distribution::normal(1.0, 2.0), Distribution::exponential(), Distribution::bernoulli(0.3)};
}

inline double rel(double a, double b) { return relative_difference(a, b); }

// Both exact Hermitian engines.
inline std::array<std::function<double(const HermitianMatrix&, const NormSpec&)>, 2> hermitian_engines() {
  return {[](const HermitianMatrix& a, const NormSpec& s) { return norms::norm_exact_bell(a, s); },
          [](const HermitianMatrix& a, const NormSpec& s) { return norms::norm_exact_partition(a, s); }};
}

inline Report axioms(const Options& opt) {
  Report rep{"axioms", {}};
  const auto dists = engine_distributions();
  const std::array<int, 3> degrees{2, 4, 6};
  const auto engines = hermitian_engines();

  Property homogeneity("homogeneity", 1e-10);
  Property triangle("triangle_inequality", 1e-10);
  Property definite("positive_definiteness", 0.0);
  Property invariance("weak_unitary_invariance", 1e-8);
  Property gamma_fact("gamma_factorial", 1e-12);
  Property normalization("bell_normalization", 1e-9);

  for (std::uint64_t k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 5;
    const NormSpec spec(dists[k % 3], degrees[(k / 3) % 3]);
    const auto a = linalg::random_hermitian(n, sub_seed(opt.seed, 1, k));
    const auto b = linalg::random_hermitian(n, sub_seed(opt.seed, 2, k), 2.0);
    for (const auto& f : engines) {
      triangle.guarded([&] { triangle.deviation(std::max(0.0, f(a + b, spec) - f(a, spec) - f(b, spec))); });
      definite.guarded([&] { definite.expect(f(a, spec) > 0.0); });
      if (k < 100) {
        homogeneity.guarded([&] {
          for (double c : {-2.0, -0.5, 3.0}) homogeneity.deviation(rel(f(c * a, spec), std::abs(c) * f(a, spec)));
        });
        invariance.guarded([&] {
          const auto u = linalg::random_unitary(n, sub_seed(opt.seed, 3, k));
          invariance.deviation(rel(f(linalg::conjugate_by(a, u), spec), f(a, spec)));
        });
      }
    }
  }

  for (int k = 0; k <= 20; ++k) {
    gamma_fact.guarded([&] {
      gamma_fact.deviation(rel(opt.gamma(k + 1.0), static_cast<double>(combinatorics::factorial(k))));
    });
  }

  for (std::uint64_t k = 0; k < 50; ++k) {
    normalization.guarded([&] {
      const std::size_t n = 1 + k % 5;
      const int d = 2 + 2 * static_cast<int>(k % 4);
      const auto& dist = dists[k % 3];
      const auto a = linalg::random_hermitian(n, sub_seed(opt.seed, 4, k));
      const auto kappa = distributions::cumulants(dist, d);
      const auto p = norms::detail::power_sums(a.eigenvalues().values(), d);
      std::vector<double> x(static_cast<std::size_t>(d));
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = kappa.kappa[j] * p[j];
      const double via_gamma = std::pow(combinatorics::complete_bell(x) / opt.gamma(d + 1.0), 1.0 / d);
      normalization.deviation(rel(via_gamma, norms::norm_exact_partition(a, NormSpec(dist, d))));
    });
  }

  for (const auto* p : {&homogeneity, &triangle, &definite, &invariance, &gamma_fact, &normalization})
    rep.properties.push_back(p->result());
  return rep;
}

inline Report engines(const Options& opt) {
  Report rep{"engines", {}};
  const auto dists = engine_distributions();

  Property bell_partition("bell_vs_partition", 1e-9);
  Property series_partition("series_vs_partition", 1e-9);
  Property exp_hd("exponential_complete_homogeneous", 1e-9);
  Property normal_cf("normal_closed_form", 1e-9);
  Property bernoulli_cf("bernoulli_closed_form", 1e-9);
  Property pareto_cf("pareto_closed_form", 1e-12);
  Property roundtrip("moment_cumulant_roundtrip", 1e-12);

  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 5;
    const auto a = linalg::random_hermitian(n, sub_seed(opt.seed, 10, k));
    const auto lambda = a.eigenvalues().values();
    for (const auto& dist : dists) {
      for (int d : {2, 4, 6, 8}) {
        const NormSpec spec(dist, d);
        bell_partition.guarded([&] {
          const double part = norms::norm_exact_partition(a, spec);
          bell_partition.deviation(rel(norms::norm_exact_bell(a, spec), part));
          // E⟨X,λ⟩^d = d!·[t^d]∏M(λ_i t), so norm^d is the coefficient itself
          const double fact = static_cast<double>(combinatorics::factorial(d));
          const double moment_d = fact * distributions::mgf_product_coefficient(dist, lambda, d);
          series_partition.deviation(rel(std::pow(std::max(moment_d / fact, 0.0), 1.0 / d), part));
        });
      }
    }
    for (int d = 2; d <= 8; d += 2) {
      exp_hd.guarded([&] {
        const double norm = norms::norm_exact_partition(a, NormSpec(Distribution::exponential(), d));
        exp_hd.deviation(rel(std::pow(norm, d), combinatorics::complete_homogeneous(lambda, d)));
      });
    }
    for (double mu : {-1.0, 0.0, 2.0})
      for (double sigma : {0.5, 1.0, 3.0})
        for (int d : {2, 4, 6}) {
          normal_cf.guarded([&] {
            normal_cf.deviation(rel(norms::closed_form_normal(a, mu, sigma, d),
                                    norms::norm_exact_partition(a, NormSpec(Distribution::normal(mu, sigma), d))));
          });
        }
    if (n <= 4) {
      for (double q : {0.2, 0.5, 0.8})
        for (int d : {2, 4, 6}) {
          bernoulli_cf.guarded([&] {
            bernoulli_cf.deviation(rel(norms::closed_form_bernoulli(lambda, q, d),
                                       norms::norm_exact_partition(lambda, NormSpec(Distribution::bernoulli(q), d))));
          });
        }
    }
    for (double alpha : {2.1, 3.0, 4.0, 10.0}) {
      pareto_cf.guarded([&] {
        const std::array<double, 2> l{2.0 * rng::uniform(opt.seed, 11, k, 0) - 1.0,
                                      2.0 * rng::uniform(opt.seed, 11, k, 1) - 1.0};
        const double engine = norms::norm_exact_partition(l, NormSpec(Distribution::pareto(alpha, 1.0), 2));
        pareto_cf.deviation(rel(std::pow(engine, 2), std::pow(norms::closed_form_pareto_2x2(l[0], l[1], alpha), 2)));
      });
    }
  }
  pareto_cf.guarded([&] { pareto_cf.deviation(rel(std::pow(norms::closed_form_pareto_2x2(1, 1, 4), 2), 34.0 / 9.0)); });

  auto all = dists;
  all.push_back(Distribution::pareto(9.0, 1.0));
  for (const auto& dist : all) {
    roundtrip.guarded([&] {
      const int d = 8;
      const auto mu = distributions::moments_from_cumulants(distributions::cumulants(dist, d));
      for (int r = 1; r <= d; ++r) roundtrip.deviation(rel(mu[static_cast<std::size_t>(r)], distributions::moment(dist, r)));
    });
  }

  for (const auto* p : {&bell_partition, &series_partition, &exp_hd, &normal_cf, &bernoulli_cf, &pareto_cf, &roundtrip})
    rep.properties.push_back(p->result());
  return rep;
}

inline Report extension_suite(const Options& opt) {
  Report rep{"extension", {}};
  const auto dists = engine_distributions();

  Property restriction("restriction_to_hermitian", 1e-9);
  Property exp_formula("exponential_d4_trace_polynomial", 1e-9);
  Property homogeneity("complex_homogeneity", 1e-10);
  Property triangle("triangle_inequality", 1e-10);
  Property definite("positive_definiteness", 0.0);
  Property invariance("weak_unitary_invariance", 1e-8);
  Property layout("block_layout_independence", 1e-12);

  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 4;
    const auto a = linalg::random_hermitian(n, sub_seed(opt.seed, 20, k));
    for (const auto& dist : dists)
      for (int d : {2, 4, 6}) {
        restriction.guarded([&] {
          restriction.deviation(
              rel(extension::norm_extended(a.matrix(), dist, d), norms::norm_exact_partition(a, NormSpec(dist, d))));
        });
      }
    exp_formula.guarded([&] {
      const auto z = linalg::random_complex(n, sub_seed(opt.seed, 21, k));
      exp_formula.deviation(rel(std::pow(extension::norm_extended(z, Distribution::exponential(), 4), 4),
                                oracles::exponential_d4_trace_polynomial(z)));
    });
  }

  const std::array<linalg::Complex, 3> scalars{linalg::Complex(0, 2), linalg::Complex(-0.5, 0.5), linalg::Complex(3, 0)};
  for (std::uint64_t k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 4;
    const auto& dist = dists[k % 3];
    const int d = 2 + 2 * static_cast<int>((k / 3) % 2);
    const auto z = linalg::random_complex(n, sub_seed(opt.seed, 22, k));
    const auto w = linalg::random_complex(n, sub_seed(opt.seed, 23, k), 1.5);
    auto f = [&](const ComplexMatrix& m) { return extension::norm_extended(m, dist, d); };
    triangle.guarded([&] { triangle.deviation(std::max(0.0, f(z + w) - f(z) - f(w))); });
    definite.guarded([&] { definite.expect(f(z) > 0.0); });
    if (k < 100) {
      homogeneity.guarded([&] {
        for (const auto c : scalars) homogeneity.deviation(rel(f(c * z), std::abs(c) * f(z)));
      });
      invariance.guarded([&] {
        const auto u = linalg::random_unitary(n, sub_seed(opt.seed, 24, k));
        invariance.deviation(rel(f(linalg::conjugate_by(z, u)), f(z)));
      });
    }
  }

  // Reassigning global positions to trace factors must not change T_π.
  for (std::uint64_t k = 0; k < 20; ++k) {
    layout.guarded([&] {
      const auto z = linalg::random_complex(3, sub_seed(opt.seed, 25, k));
      extension::detail::TraceWordTable words(z);
      std::vector<int> perm{2, 0, 3, 1};
      for (const auto& pi : combinatorics::cached_partitions(4)) {
        const double base = extension::trace_T(pi, z);
        layout.deviation(std::abs(extension::detail::trace_T_layout(pi, words, perm) - base) / (1.0 + std::abs(base)));
      }
    });
  }

  for (const auto* p : {&restriction, &exp_formula, &homogeneity, &triangle, &definite, &invariance, &layout})
    rep.properties.push_back(p->result());
  return rep;
}

/// Exact engines available for a (distribution, d, n) combination, as vector functions.
inline std::vector<std::function<double(std::span<const double>)>> vector_engines(const Distribution& dist, int d,
                                                                                 std::size_t n) {
  const NormSpec spec(dist, d);
  std::vector<std::function<double(std::span<const double>)>> out{
      [spec](std::span<const double> l) { return norms::norm_exact_bell(l, spec); },
      [spec](std::span<const double> l) { return norms::norm_exact_partition(l, spec); }};
  if (dist.has_mgf()) {
    out.push_back([dist, d](std::span<const double> l) {
      return std::pow(std::max(distributions::mgf_product_coefficient(dist, l, d), 0.0), 1.0 / d);
    });
  }
  if (const auto* nk = std::get_if<distributions::Normal>(&dist.kind())) {
    out.push_back([mu = nk->mu, sigma = nk->sigma, d](std::span<const double> l) {
      return norms::closed_form_normal(l, mu, sigma, d);
    });
  }
  if (const auto* bk = std::get_if<distributions::Bernoulli>(&dist.kind());
      bk && n <= norms::kMaxBernoulliVariables && d <= norms::kMaxBernoulliDegree) {
    out.push_back([q = bk->q, d](std::span<const double> l) { return norms::closed_form_bernoulli(l, q, d); });
  }
  if (const auto* pk = std::get_if<distributions::Pareto>(&dist.kind()); pk && n == 2 && d == 2 && pk->xm == 1.0) {
    out.push_back([alpha = pk->alpha](std::span<const double> l) {
      return norms::closed_form_pareto_2x2(l[0], l[1], alpha);
    });
  }
  return out;
}

inline Report majorization_suite(const Options& opt) {
  Report rep{"majorization", {}};
  Property ky_fan("ky_fan", 0.0);
  Property chain("hlp_birkhoff_chain", 1e-7);
  Property bound("birkhoff_term_bound", 0.0);
  Property coeffs("birkhoff_coefficient_sum", 1e-10);
  Property hlp("hlp_transfer_reproduces", 1e-9);
  Property schur("schur_convexity", 1e-12);

  for (std::uint64_t k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 6;
    const auto a = linalg::random_hermitian(n, sub_seed(opt.seed, 30, k));
    const auto b = linalg::random_hermitian(n, sub_seed(opt.seed, 31, k), 0.5 + k % 3);
    ky_fan.guarded([&] { ky_fan.expect(majorization::ky_fan_check(a, b)); });
    if (k >= 100) continue;
    chain.guarded([&] {
      const auto sum = (a + b).eigenvalues();
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = a.eigenvalues()[i] + b.eigenvalues()[i];
      const auto ds = majorization::hlp_transfer(sum.values(), y);
      const auto direct = ds.apply(y);
      for (std::size_t i = 0; i < n; ++i) hlp.deviation(std::abs(direct[i] - sum[i]));
      const auto dec = majorization::birkhoff_decompose(ds);
      bound.expect(dec.terms.size() <= n * n - n + 1);
      coeffs.deviation(std::abs(dec.coefficient_sum() - 1.0));
      const auto rebuilt = dec.apply(y);
      for (std::size_t i = 0; i < n; ++i) chain.deviation(std::abs(rebuilt[i] - sum[i]));
    });
  }

  const std::vector<Distribution> catalog{Distribution::normal(0.0, 1.0), Distribution::normal(1.0, 2.0),
                                          Distribution::exponential(),    Distribution::bernoulli(0.3),
                                          Distribution::pareto(10.0, 1.0), Distribution::pareto(5.0, 1.0)};
  for (std::uint64_t k = 0; k < 1000; ++k) {
    schur.guarded([&] {
      const std::size_t n = 2 + k % 5;
      const auto [x, y] = majorization::majorization_pair_generator(n, sub_seed(opt.seed, 32, k));
      for (const auto& dist : catalog)
        for (int d : {2, 4, 6}) {
          if (!dist.has_moment(d)) continue;
          for (const auto& f : vector_engines(dist, d, n)) schur.deviation(std::max(0.0, f(x) - f(y)));
        }
    });
  }

  for (const auto* p : {&ky_fan, &chain, &bound, &coeffs, &hlp, &schur}) rep.properties.push_back(p->result());
  return rep;
}

inline void check_table(Property& p, const circle::CircleTable& t) {
  for (const auto& r : t.rows) {
    p.deviation(std::abs(r.dir1 * r.dir1 + r.dir2 * r.dir2 - 1.0));
    p.deviation(std::max(std::abs(r.x * r.norm - r.dir1), std::abs(r.y * r.norm - r.dir2)));
  }
}

inline Report figures(const Options& opt) {
  using circle::Method;
  Report rep{"figures", {}};
  Property round("normal_d2_round", 1e-9);
  Property pointwise("exact_tables_match_bell_engine", 1e-9);
  Property invariants("table_invariants", 1e-9);
  Property generated("figure_tables_generated", 0.0);
  Property monotone("exponential_radius_monotone", 1e-9);
  Property roundtrip("csv_round_trip", 0.0);
  constexpr std::size_t kResolution = 180;
  constexpr std::size_t kMcSamples = 20000;

  round.guarded([&] {
    const auto t = circle::circle_samples(Distribution::normal(0, 1), 2, kResolution, Method::exact);
    for (const auto& r : t.rows) round.deviation(std::abs(std::hypot(r.x, r.y) - std::sqrt(2.0)));
  });

  auto exact_table = [&](const Distribution& dist, int d) {
    pointwise.guarded([&] {
      const auto t = circle::circle_samples(dist, d, kResolution, Method::exact);
      check_table(invariants, t);
      const NormSpec spec(dist, d);
      for (const auto& r : t.rows) {
        const std::array<double, 2> l{r.dir1, r.dir2};
        pointwise.deviation(rel(r.norm, norms::norm_exact_bell(l, spec)));
      }
      generated.expect(t.rows.size() == kResolution);
    });
  };
  auto mc_table = [&](const Distribution& dist, double d) {
    generated.guarded([&] {
      const auto t = circle::circle_samples(dist, d, kResolution / 4, Method::mc, kMcSamples, opt.seed);
      check_table(invariants, t);
      generated.expect(t.rows.size() == kResolution / 4);
    });
  };

  // standard normal, d = 1, 2, 4, 20; normal means at d = 10
  mc_table(Distribution::normal(0, 1), 1.0);
  for (int d : {2, 4, 20}) exact_table(Distribution::normal(0, 1), d);
  for (double mu : {-2.0, -1.0, 0.0, 1.0, 6.0}) exact_table(Distribution::normal(mu, 1), 10);
  // exponential, d = 1, 2, 3, 4, 20
  for (double d : {1.0, 3.0}) mc_table(Distribution::exponential(), d);
  for (int d : {2, 4, 20}) exact_table(Distribution::exponential(), d);
  // Bernoulli q = 0.5 at d = 2, 4, 20, and varying q at d = 2, 10
  for (int d : {2, 4, 20}) exact_table(Distribution::bernoulli(0.5), d);
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (int d : {2, 10}) exact_table(Distribution::bernoulli(q), d);
  // Pareto x_m = 1: alpha in {2.1, 3, 4, 10} at d = 2, alpha = 5 at d = 1, 2, 4
  for (double alpha : {2.1, 3.0, 4.0, 10.0}) exact_table(Distribution::pareto(alpha, 1.0), 2);
  mc_table(Distribution::pareto(5.0, 1.0), 1.0);
  for (int d : {2, 4}) exact_table(Distribution::pareto(5.0, 1.0), d);

  monotone.guarded([&] {
    const std::array<double, 2> diag{std::sqrt(0.5), std::sqrt(0.5)};
    double previous = 0.0;
    for (int d : {2, 4, 20}) {
      const double radius = 1.0 / norms::norm_exact_bell(diag, NormSpec(Distribution::exponential(), d));
      monotone.deviation(std::max(0.0, previous - radius));
      previous = radius;
    }
  });

  roundtrip.guarded([&] {
    const auto t = circle::circle_samples(Distribution::exponential(), 4, 64, Method::exact);
    std::stringstream ss;
    circle::write_csv(ss, t);
    const auto back = circle::read_csv(ss);
    roundtrip.expect(back.rows == t.rows);
  });

  for (const auto* p : {&round, &pointwise, &invariants, &generated, &monotone, &roundtrip})
    rep.properties.push_back(p->result());
  return rep;
}

inline Report continuity(const Options& opt) {
  Report rep{"continuity", {}};
  Property jump("max_adjacent_jump", 0.02);
  Property exact("matches_exact_at_d2", 4.0);
  Property crn("common_random_numbers", 0.0);

  const std::array<double, 2> lambda{1.0, -1.0};
  const auto dist = Distribution::normal(0, 1);
  constexpr std::size_t kSamples = 1000000;
  std::vector<double> grid(41);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 1.0 + 2.0 * static_cast<double>(i) / 40.0;

  jump.guarded([&] {
    const auto scan = norms::continuity_scan(lambda, dist, grid, kSamples, opt.seed);
    for (std::size_t i = 1; i < scan.size(); ++i) jump.deviation(std::abs(scan[i].value - scan[i - 1].value));
    const auto& at2 = scan[20];
    const double truth = norms::norm_exact_partition(lambda, NormSpec(dist, 2));
    exact.deviation(std::abs(at2.value - truth) / at2.std_error);
    const auto direct = norms::norm_mc(lambda, NormSpec(dist, grid[7]), kSamples, opt.seed);
    crn.expect(direct.value == scan[7].value && direct.std_error == scan[7].std_error);
  });

  for (const auto* p : {&jump, &exact, &crn}) rep.properties.push_back(p->result());
  return rep;
}

}  // namespace detail

inline Report run_verify(std::string_view suite, const Options& options = {}) {
  if (suite == "axioms") return detail::axioms(options);
  if (suite == "engines") return detail::engines(options);
  if (suite == "extension") return detail::extension_suite(options);
  if (suite == "majorization") return detail::majorization_suite(options);
  if (suite == "figures") return detail::figures(options);
  if (suite == "continuity") return detail::continuity(options);
  throw UnknownSuite("'" + std::string(suite) + "'");
}

inline void print_report(std::ostream& os, const Report& report) {
  char buf[256];
  os << "suite " << report.suite << '\n';
  for (const auto& p : report.properties) {
    std::snprintf(buf, sizeof buf, "  [%s] %-36s checks=%-6zu max_dev=%.3e tol=%.1e", p.passed ? "PASS" : "FAIL",
                  p.name.c_str(), p.checks, p.max_deviation, p.tolerance);
    os << buf;
    if (!p.note.empty()) os << "  (" << p.note << ')';
    os << '\n';
  }
  os << (report.passed() ? "suite passed" : "suite FAILED") << '\n';
}

}  // namespace specnorm::verify
