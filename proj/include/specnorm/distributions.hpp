#pragma once

// Catalog of iid entry distributions: exact raw moments, cumulants from the
// moment recursion, counter-based sampling and truncated MGF products.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "specnorm/combinatorics.hpp"
#include "specnorm/errors.hpp"
#include "specnorm/numeric.hpp"

namespace specnorm::distributions {

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;
};
/// Standard exponential (rate 1).
struct Exponential {};
struct Bernoulli {
  double q = 0.5;
};
struct Pareto {
  double alpha = 1.0;
  double xm = 1.0;
};

class Distribution {
 public:
  using Kind = std::variant<Normal, Exponential, Bernoulli, Pareto>;

  static Distribution normal(double mu, double sigma) {
    if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
      throw InvalidParameter("normal needs finite mu and sigma > 0");
    }
    return Distribution(Normal{mu, sigma});
  }
  static Distribution exponential() { return Distribution(Exponential{}); }
  static Distribution bernoulli(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("bernoulli needs 0 < q < 1");
    return Distribution(Bernoulli{q});
  }
  static Distribution pareto(double alpha, double xm = 1.0) {
    if (!(alpha > 0.0) || !(xm > 0.0) || !std::isfinite(alpha) || !std::isfinite(xm)) {
      throw InvalidParameter("pareto needs alpha > 0 and xm > 0");
    }
    return Distribution(Pareto{alpha, xm});
  }

  /// Parses `normal:mu=0,sigma=1`, `exp`, `bernoulli:q=0.5`, `pareto:alpha=4,xm=1`.
  static Distribution parse(std::string_view spec);

  const Kind& kind() const { return kind_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }

  bool has_mgf() const { return !is<Pareto>(); }

  /// Whether E|X|^order is finite.
  bool has_moment(double order) const {
    if (const auto* p = std::get_if<Pareto>(&kind_)) return p->alpha > order;
    return true;
  }

  std::string label() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Normal>) {
            os << "normal:mu=" << k.mu << ",sigma=" << k.sigma;
          } else if constexpr (std::is_same_v<T, Exponential>) {
            os << "exp";
          } else if constexpr (std::is_same_v<T, Bernoulli>) {
            os << "bernoulli:q=" << k.q;
          } else {
            os << "pareto:alpha=" << k.alpha << ",xm=" << k.xm;
          }
        },
        kind_);
    return os.str();
  }

 private:
  explicit Distribution(Kind k) : kind_(k) {}
  Kind kind_;
};

inline Distribution Distribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParseError("expected key=value in distribution spec '" + std::string(spec) + "'");
      }
      const std::string key(item.substr(0, eq));
      const std::string text(item.substr(eq + 1));
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text.size()) {
        throw ParseError("bad number '" + text + "' for key '" + key + "'");
      }
      if (!params.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'");
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }

  auto take = [&](const std::string& key, std::optional<double> fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
      if (!fallback) throw ParseError("distribution '" + name + "' needs parameter '" + key + "'");
      return *fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](Distribution d) {
    if (!params.empty()) {
      throw ParseError("unknown parameter '" + params.begin()->first + "' for '" + name + "'");
    }
    return d;
  };

  if (name == "normal") {
    const double mu = take("mu", 0.0);
    const double sigma = take("sigma", 1.0);
    return finish(normal(mu, sigma));
  }
  if (name == "exp" || name == "exponential") return finish(exponential());
  if (name == "bernoulli") {
    const double q = take("q", std::nullopt);
    return finish(bernoulli(q));
  }
  if (name == "pareto") {
    const double alpha = take("alpha", std::nullopt);
    const double xm = take("xm", 1.0);
    return finish(pareto(alpha, xm));
  }
  throw ParseError("unknown distribution '" + name + "'");
}

namespace detail {

template <class T>
T moment_as(const Distribution& dist, int r) {
  if (r < 0) throw OutOfRange("moment order must be nonnegative");
  if (r == 0) return T(1);
  return std::visit(
      [r](const auto& k) -> T {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Normal>) {
          const T mu = k.mu, var = T(k.sigma) * T(k.sigma);
          T prev2 = 1, prev1 = mu;
          for (int j = 2; j <= r; ++j) {
            const T next = mu * prev1 + T(j - 1) * var * prev2;
            prev2 = prev1;
            prev1 = next;
          }
          return prev1;
        } else if constexpr (std::is_same_v<K, Exponential>) {
          T f = 1;
          for (int j = 2; j <= r; ++j) f *= j;
          return f;
        } else if constexpr (std::is_same_v<K, Bernoulli>) {
          return k.q;
        } else {
          if (!(k.alpha > r)) {
            throw MomentDoesNotExist("pareto moment of order " + std::to_string(r) +
                                     " needs alpha > " + std::to_string(r));
          }
          return T(k.alpha) * std::pow(T(k.xm), r) / (T(k.alpha) - T(r));
        }
      },
      dist.kind());
}

/// κ₁ … κ_d at index r−1, by the recursion of cumulants_from_moments.
template <class T>
std::vector<T> cumulants_as(const Distribution& dist, int d) {
  if (d < 1) throw OutOfRange("cumulant order must be positive");
  std::vector<T> mu(static_cast<std::size_t>(d) + 1), kappa(static_cast<std::size_t>(d));
  for (int r = 0; r <= d; ++r) mu[static_cast<std::size_t>(r)] = moment_as<T>(dist, r);
  for (int r = 1; r <= d; ++r) {
    T s = mu[static_cast<std::size_t>(r)];
    for (int l = 1; l <= r - 1; ++l) {
      s -= static_cast<T>(combinatorics::binomial(r - 1, l)) * mu[static_cast<std::size_t>(l)] *
           kappa[static_cast<std::size_t>(r - l - 1)];
    }
    kappa[static_cast<std::size_t>(r - 1)] = s;
  }
  return kappa;
}

}  // namespace detail

/// Raw moment μ_r = E[X^r].
inline double moment(const Distribution& dist, int r) { return detail::moment_as<double>(dist, r); }

/// μ₀, μ₁, …, μ_d.
inline std::vector<double> moments(const Distribution& dist, int d) {
  std::vector<double> mu(static_cast<std::size_t>(d) + 1);
  for (int r = 0; r <= d; ++r) mu[static_cast<std::size_t>(r)] = moment(dist, r);
  return mu;
}

/// κ₁ … κ_d; `at(r)` is 1-based.
struct CumulantVector {
  std::vector<double> kappa;

  double at(int r) const { return kappa.at(static_cast<std::size_t>(r - 1)); }
  std::size_t size() const { return kappa.size(); }
};

/// Solves μ_r = Σ_{ℓ=0}^{r−1} C(r−1,ℓ) μ_ℓ κ_{r−ℓ} for κ, given μ₀ = 1, μ₁ … μ_d.
inline CumulantVector cumulants_from_moments(std::span<const double> mu) {
  const int d = static_cast<int>(mu.size()) - 1;
  CumulantVector out{std::vector<double>(static_cast<std::size_t>(std::max(d, 0)))};
  for (int r = 1; r <= d; ++r) {
    double s = mu[static_cast<std::size_t>(r)];
    for (int l = 1; l <= r - 1; ++l) {
      s -= static_cast<double>(combinatorics::binomial(r - 1, l)) * mu[static_cast<std::size_t>(l)] *
           out.kappa[static_cast<std::size_t>(r - l - 1)];
    }
    out.kappa[static_cast<std::size_t>(r - 1)] = s;
  }
  return out;
}

/// Inverse of cumulants_from_moments: returns μ₀ … μ_d.
inline std::vector<double> moments_from_cumulants(const CumulantVector& kappa) {
  const int d = static_cast<int>(kappa.size());
  std::vector<double> mu(static_cast<std::size_t>(d) + 1, 0.0);
  mu[0] = 1.0;
  for (int r = 1; r <= d; ++r) {
    double s = 0.0;
    for (int l = 0; l <= r - 1; ++l) {
      s += static_cast<double>(combinatorics::binomial(r - 1, l)) * mu[static_cast<std::size_t>(l)] *
           kappa.at(r - l);
    }
    mu[static_cast<std::size_t>(r)] = s;
  }
  return mu;
}

/// Evaluated in extended precision, then rounded.
inline CumulantVector cumulants(const Distribution& dist, int d) {
  const auto kappa = detail::cumulants_as<long double>(dist, d);
  return {std::vector<double>(kappa.begin(), kappa.end())};
}

/// One draw at (seed, index, position). Normal consumes two uniforms
/// (lanes 0 and 1), the others one (lane 0).
inline double draw(const Distribution& dist, std::uint64_t seed, std::uint64_t index,
                   std::uint64_t position) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Normal>) {
          return k.mu + k.sigma * rng::standard_normal(seed, index, position);
        } else {
          const double u = rng::uniform(seed, index, position, 0);
          if constexpr (std::is_same_v<T, Exponential>) {
            return -std::log1p(-u);
          } else if constexpr (std::is_same_v<T, Bernoulli>) {
            return u < k.q ? 1.0 : 0.0;
          } else {
            return k.xm * std::pow(1.0 - u, -1.0 / k.alpha);
          }
        }
      },
      dist.kind());
}

inline std::vector<double> sample_vector(const Distribution& dist, std::size_t n, std::uint64_t seed,
                                         std::uint64_t index) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = draw(dist, seed, index, i);
  return out;
}

/// Coefficient of t^d in ∏_i M(λ_i t), each factor truncated to Σ_{k≤d} μ_k λ_i^k t^k / k!.
inline double mgf_product_coefficient(const Distribution& dist, std::span<const double> lambda, int d) {
  if (!dist.has_mgf()) throw MgfUnavailable(dist.label() + " has no moment generating function");
  if (d < 2 || d % 2 != 0) throw OddExponent("series coefficient needs an even d >= 2");
  if (d > combinatorics::kMaxPartitionDegree) throw OutOfRange("series coefficient needs d <= 20");
  const std::vector<double> mu = moments(dist, d);
  std::vector<double> factor_series(static_cast<std::size_t>(d) + 1);
  std::vector<double> product(static_cast<std::size_t>(d) + 1, 0.0);
  product[0] = 1.0;
  for (double l : lambda) {
    double power = 1.0, fact = 1.0;
    for (int k = 0; k <= d; ++k) {
      if (k > 0) {
        power *= l;
        fact *= k;
      }
      factor_series[static_cast<std::size_t>(k)] = mu[static_cast<std::size_t>(k)] * power / fact;
    }
    std::vector<double> next(static_cast<std::size_t>(d) + 1, 0.0);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j)
        next[static_cast<std::size_t>(i + j)] +=
            product[static_cast<std::size_t>(i)] * factor_series[static_cast<std::size_t>(j)];
    product = std::move(next);
  }
  return product[static_cast<std::size_t>(d)];
}

}  // namespace specnorm::distributions
