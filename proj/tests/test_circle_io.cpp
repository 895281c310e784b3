#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "specnorm/circle.hpp"
#include "specnorm/combinatorics.hpp"
#include "specnorm/matrix_io.hpp"
#include "specnorm/norms.hpp"

using namespace specnorm;
using namespace specnorm::circle;
using distributions::Distribution;
using linalg::Complex;

TEST(Circle, NormalDegreeTwoIsRound) {
  const auto t = circle_samples(Distribution::normal(0, 1), 2, 64, Method::exact);
  ASSERT_EQ(t.rows.size(), 64U);
  for (const auto& r : t.rows) EXPECT_NEAR(std::hypot(r.x, r.y), std::sqrt(2.0), 1e-9);
}

TEST(Circle, ExponentialDiagonal) {
  const auto t = circle_samples(Distribution::exponential(), 2, 8, Method::exact);
  const auto& r = t.rows[1];
  EXPECT_NEAR(r.theta, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(r.norm, std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(std::hypot(r.x, r.y), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.x, r.y, 1e-12);
}

TEST(Circle, ResolutionAndFields) {
  const auto t = circle_samples(Distribution::bernoulli(0.5), 4, 4, Method::exact);
  ASSERT_EQ(t.rows.size(), 4U);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& r = t.rows[k];
    EXPECT_NEAR(r.theta, 2 * std::numbers::pi * k / 4, 1e-15);
    EXPECT_NEAR(r.dir1 * r.dir1 + r.dir2 * r.dir2, 1.0, 1e-15);
    EXPECT_NEAR(r.x, r.dir1 / r.norm, 1e-15);
    EXPECT_NEAR(r.y, r.dir2 / r.norm, 1e-15);
  }
  EXPECT_THROW(circle_samples(Distribution::exponential(), 2, 0, Method::exact), InvalidParameter);
}

TEST(Circle, ExactErrors) {
  EXPECT_THROW(circle_samples(Distribution::exponential(), 3, 8, Method::exact), OddExponent);
  EXPECT_THROW(circle_samples(Distribution::pareto(3), 4, 8, Method::exact), MomentDoesNotExist);
  EXPECT_THROW(circle_samples(Distribution::pareto(3), 4, 8, Method::mc, 5000), MomentDoesNotExist);
}

TEST(Circle, MatchesBellEngine) {
  for (int d : {2, 4, 20}) {
    const auto t = circle_samples(Distribution::exponential(), d, 32, Method::exact);
    for (const auto& r : t.rows) {
      const std::vector<double> l{r.dir1, r.dir2};
      EXPECT_LE(relative_difference(r.norm, norms::norm_exact_bell(l, norms::NormSpec(Distribution::exponential(), d))),
                1e-9);
    }
  }
}

TEST(Circle, McNearExact) {
  const auto exact = circle_samples(Distribution::exponential(), 4, 8, Method::exact);
  const auto mc = circle_samples(Distribution::exponential(), 4, 8, Method::mc, 200000, 3);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LE(relative_difference(exact.rows[k].norm, mc.rows[k].norm), 0.03);
  const auto again = circle_samples(Distribution::exponential(), 4, 8, Method::mc, 200000, 3);
  EXPECT_EQ(mc.rows, again.rows);
}

TEST(Csv, RoundTrip) {
  const auto t = circle_samples(Distribution::pareto(5), 2, 16, Method::exact);
  std::stringstream ss;
  write_csv(ss, t);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "theta,dir1,dir2,norm,x,y");
  const auto back = read_csv(ss);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(Csv, RejectsMalformed) {
  std::stringstream bad_header("a,b\n1,2\n");
  EXPECT_THROW(read_csv(bad_header), ParseError);
  std::stringstream short_row("theta,dir1,dir2,norm,x,y\n1,2,3\n");
  EXPECT_THROW(read_csv(short_row), ParseError);
}

TEST(Svg, SinglePolyline) {
  std::stringstream ss;
  write_svg(ss, circle_samples(Distribution::normal(0, 1), 2, 12, Method::exact));
  const auto s = ss.str();
  EXPECT_NE(s.find("<svg"), std::string::npos);
  EXPECT_EQ(s.find("<polyline"), s.rfind("<polyline"));
  EXPECT_NE(s.find("<polyline"), std::string::npos);
}

TEST(ComplexParse, Forms) {
  using io::parse_complex;
  EXPECT_EQ(parse_complex("3"), Complex(3, 0));
  EXPECT_EQ(parse_complex("-2.5"), Complex(-2.5, 0));
  EXPECT_EQ(parse_complex("2i"), Complex(0, 2));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
  EXPECT_EQ(parse_complex("1-i"), Complex(1, -1));
  EXPECT_EQ(parse_complex("1e-3+2e+1i"), Complex(1e-3, 20));
  for (const char* bad : {"", "x", "1+", "1+2", "1+2j", "ii", "1++2i"}) {
    EXPECT_THROW(parse_complex(bad), ParseError) << bad;
  }
}

TEST(MatrixFile, RoundTrip) {
  const auto z = linalg::random_complex(3, 4);
  std::stringstream ss;
  io::write_matrix(ss, z);
  EXPECT_EQ(io::read_matrix(ss), z);
}

TEST(MatrixFile, Malformed) {
  for (const char* bad : {"", "2\n1 2 3\n", "2\n1 2 3 4 5\n", "x\n", "0\n", "2\n1 2 3 q\n"}) {
    std::stringstream ss(bad);
    EXPECT_ANY_THROW(io::read_matrix(ss)) << bad;
  }
  std::stringstream ok("2\n2 i\n-i 2\n");
  EXPECT_EQ(io::read_matrix(ok), (linalg::ComplexMatrix{{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}}));
}
