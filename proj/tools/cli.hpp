#pragma once

// specnorm command-line front end. `run` is separate from main so tests can
// drive it with captured streams.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specnorm/specnorm.hpp"

namespace specnorm::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kDomainError = 3 };

namespace detail {

inline linalg::ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return io::read_matrix(in);
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::optional<linalg::HermitianMatrix> as_hermitian(const linalg::ComplexMatrix& m) {
  try {
    return linalg::HermitianMatrix(m);
  } catch (const NotHermitian&) {
    return std::nullopt;
  }
}

template <class Write>
void write_file(const std::string& path, Write&& write) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file '" + path + "'");
  write(out);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-vector matrix norms: evaluation, unit circles and verification"};
  app.require_subcommand(1);

  std::string dist_text, matrix_path, method = "exact", out_path, svg_path, suite, ds_path;
  double d = 2.0, dmin = 1.0, dmax = 3.0;
  std::size_t samples = 100000, resolution = 360, steps = 40;
  std::uint64_t seed = 1;

  auto* norm_cmd = app.add_subcommand("norm", "Evaluate the norm of a matrix");
  norm_cmd->add_option("--dist", dist_text, "Distribution, e.g. normal:mu=0,sigma=1")->required();
  norm_cmd->add_option("--d", d, "Exponent d >= 1")->required();
  norm_cmd->add_option("--matrix", matrix_path, "Matrix file")->required();
  norm_cmd->add_option("--method", method)->check(CLI::IsMember({"exact", "mc"}));
  norm_cmd->add_option("--samples", samples);
  norm_cmd->add_option("--seed", seed);

  auto* circle_cmd = app.add_subcommand("circle", "Emit unit-circle data for 2x2 diagonal matrices");
  circle_cmd->add_option("--dist", dist_text)->required();
  circle_cmd->add_option("--d", d)->required();
  circle_cmd->add_option("--resolution", resolution)->required();
  circle_cmd->add_option("--method", method)->required()->check(CLI::IsMember({"exact", "mc"}));
  circle_cmd->add_option("--out", out_path)->required();
  circle_cmd->add_option("--svg", svg_path);
  circle_cmd->add_option("--samples", samples);
  circle_cmd->add_option("--seed", seed);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", suite, "One of axioms, engines, extension, majorization, figures, continuity")
      ->required();
  verify_cmd->add_option("--seed", seed);

  auto* decompose_cmd = app.add_subcommand("decompose", "Birkhoff decomposition of a doubly stochastic CSV");
  decompose_cmd->add_option("--doubly-stochastic", ds_path)->required();

  auto* cont_cmd = app.add_subcommand("continuity", "Norm as a function of d with common random numbers");
  cont_cmd->add_option("--dist", dist_text)->required();
  cont_cmd->add_option("--matrix", matrix_path)->required();
  cont_cmd->add_option("--dmin", dmin)->required();
  cont_cmd->add_option("--dmax", dmax)->required();
  cont_cmd->add_option("--steps", steps, "Number of grid intervals; the grid has steps+1 points")->required();
  cont_cmd->add_option("--samples", samples)->required();
  cont_cmd->add_option("--seed", seed)->required();
  cont_cmd->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*norm_cmd) {
      const auto dist = distributions::Distribution::parse(dist_text);
      const auto m = detail::load_matrix(matrix_path);
      const auto herm = detail::as_hermitian(m);
      const norms::NormSpec spec(dist, d);
      if (method == "mc") {
        if (!herm) throw NotHermitian("Monte Carlo evaluation needs a Hermitian matrix");
        const auto est = norms::norm_mc(herm->eigenvalues(), spec, samples, seed);
        out << "value " << detail::fmt(est.value) << '\n'
            << "stderr " << detail::fmt(est.std_error) << '\n'
            << "samples " << est.samples << '\n';
      } else {
        const double value = herm ? norms::norm_exact_partition(*herm, spec)
                                  : extension::norm_extended(m, dist, spec.even_degree());
        out << "value " << detail::fmt(value) << '\n';
      }
      return kSuccess;
    }

    if (*circle_cmd) {
      const auto dist = distributions::Distribution::parse(dist_text);
      const auto table = circle::circle_samples(dist, d, resolution,
                                                method == "mc" ? circle::Method::mc : circle::Method::exact,
                                                samples, seed);
      detail::write_file(out_path, [&](std::ostream& os) { circle::write_csv(os, table); });
      if (!svg_path.empty()) detail::write_file(svg_path, [&](std::ostream& os) { circle::write_svg(os, table); });
      out << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
      return kSuccess;
    }

    if (*verify_cmd) {
      verify::Options opts;
      opts.seed = seed;
      const auto report = verify::run_verify(suite, opts);
      verify::print_report(out, report);
      return report.passed() ? kSuccess : kVerificationFailure;
    }

    if (*decompose_cmd) {
      std::ifstream in(ds_path);
      if (!in) throw ParseError("cannot open '" + ds_path + "'");
      const auto rows = io::read_numeric_csv(in);
      const std::size_t n = rows.size();
      std::vector<double> entries;
      for (const auto& r : rows) {
        if (r.size() != n) throw ParseError("doubly stochastic CSV must be square");
        entries.insert(entries.end(), r.begin(), r.end());
      }
      const auto dec = majorization::birkhoff_decompose(majorization::DoublyStochastic(n, std::move(entries)));
      out << "coefficient";
      for (std::size_t i = 0; i < n; ++i) out << ",p" << i;
      out << '\n';
      for (const auto& t : dec.terms) {
        out << detail::fmt(t.coefficient);
        for (std::size_t j : t.permutation) out << ',' << j;
        out << '\n';
      }
      return kSuccess;
    }

    if (*cont_cmd) {
      if (steps == 0) throw InvalidParameter("--steps must be positive");
      if (!(dmax >= dmin)) throw InvalidParameter("--dmax must be >= --dmin");
      const auto dist = distributions::Distribution::parse(dist_text);
      const linalg::HermitianMatrix a(detail::load_matrix(matrix_path));
      std::vector<double> grid(steps + 1);
      for (std::size_t i = 0; i <= steps; ++i) {
        grid[i] = dmin + (dmax - dmin) * static_cast<double>(i) / static_cast<double>(steps);
      }
      const auto scan = norms::continuity_scan(a, dist, grid, samples, seed);
      detail::write_file(out_path, [&](std::ostream& os) {
        os << "d,value,stderr,samples\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
          os << detail::fmt(grid[i]) << ',' << detail::fmt(scan[i].value) << ',' << detail::fmt(scan[i].std_error)
             << ',' << scan[i].samples << '\n';
        }
      });
      out << "wrote " << grid.size() << " rows to " << out_path << '\n';
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace specnorm::cli
