#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hansard/random.hpp"
#include "hansard/stats.hpp"

using namespace hansard;

namespace {

// Student-t density.
double t_pdf(double t, double nu) {
  const double c = std::exp(std::lgamma((nu + 1.0) / 2.0) -
                            std::lgamma(nu / 2.0)) /
                   std::sqrt(nu * 3.141592653589793238462643383279502884);
  return c * std::pow(1.0 + t * t / nu, -(nu + 1.0) / 2.0);
}

// Quadrature oracle for the two-sided p: 1 - 2 * Integral_0^{|t|} pdf,
// composite Simpson with enough panels for ~1e-12.
double p_two_sided_by_quadrature(double t, double nu) {
  const double hi = std::abs(t);
  const int panels = 4000;
  const double h = hi / (2 * panels);
  double sum = t_pdf(0.0, nu) + t_pdf(hi, nu);
  for (int k = 1; k < 2 * panels; ++k)
    sum += t_pdf(k * h, nu) * (k % 2 ? 4.0 : 2.0);
  const double integral = sum * h / 3.0;
  return 1.0 - 2.0 * integral;
}

// Exact-correlation test data: y built from centered x plus an
// orthogonalized residual, scaled so Pearson r hits the target exactly.
PairedSeries series_with_r(std::size_t n, double target_r) {
  PairedSeries s;
  std::vector<double> x(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(i + 1);
    e[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
  double mx = 0.0;
  for (double v : x) mx += v;
  mx /= static_cast<double>(n);
  for (double& v : x) v -= mx;
  double ex = 0.0, xx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ex += e[i] * x[i];
    xx += x[i] * x[i];
  }
  double me = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] -= (ex / xx) * x[i];
    me += e[i];
  }
  me /= static_cast<double>(n);
  double ee = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] -= me;
    ee += e[i] * e[i];
  }
  const double sign = target_r < 0 ? -1.0 : 1.0;
  const double k =
      std::sqrt(xx / ee) * std::sqrt(1.0 / (target_r * target_r) - 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back("p" + std::to_string(i));
    s.x.push_back(x[i] + mx);
    s.y.push_back(sign * x[i] + k * e[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("incomplete beta agrees with closed forms") {
  DetRng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = 0.5 + 5.0 * rng.u01();
    const double b = 0.5 + 5.0 * rng.u01();
    const double x = rng.u01();
    // I_x(a, 1) = x^a and I_x(1, b) = 1 - (1-x)^b.
    CHECK_THAT(incomplete_beta(a, 1.0, x),
               Catch::Matchers::WithinAbs(std::pow(x, a), 1e-10));
    CHECK_THAT(incomplete_beta(1.0, b, x),
               Catch::Matchers::WithinAbs(1.0 - std::pow(1.0 - x, b), 1e-10));
    // Reflection.
    CHECK_THAT(incomplete_beta(a, b, x),
               Catch::Matchers::WithinAbs(1.0 - incomplete_beta(b, a, 1.0 - x),
                                          1e-10));
  }
}

TEST_CASE("t CDF matches the quadrature oracle across dof") {
  for (double nu : {1.0, 2.0, 5.0, 6.0, 12.0, 30.0, 100.0}) {
    for (double t : {0.0, 0.3, 1.0, 2.165, 4.5, 7.45}) {
      const double two_sided = t == 0.0 ? 1.0 : p_two_sided_by_quadrature(t, nu);
      const double mine = 2.0 * (1.0 - student_t_cdf(t, nu));
      CHECK_THAT(mine, Catch::Matchers::WithinAbs(two_sided, 1e-9));
    }
  }
}

TEST_CASE("exactly collinear data: unit correlation, zero residuals") {
  PairedSeries s;
  for (int i = 0; i < 5; ++i) {
    s.labels.push_back("l" + std::to_string(i));
    s.x.push_back(i);
    s.y.push_back(2.0 * i);
  }
  const RegressionFit fit = ols(s);
  CHECK_THAT(fit.beta1, Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK_THAT(fit.beta0, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(fit.r, Catch::Matchers::WithinAbs(1.0, 1e-12));
  for (double resid : fit.residuals)
    CHECK_THAT(resid, Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK(fit.p_value > 0.0);  // stays inside (0, 1]
}

TEST_CASE("published p-values: n=14 r=-0.53 and n=8 r=-0.95") {
  {
    const PairedSeries s = series_with_r(14, -0.53);
    const RegressionFit fit = ols(s);
    REQUIRE_THAT(fit.r, Catch::Matchers::WithinAbs(-0.53, 1e-12));
    const double t = 0.53 * std::sqrt(12.0) / std::sqrt(1.0 - 0.53 * 0.53);
    CHECK_THAT(fit.p_value,
               Catch::Matchers::WithinAbs(p_two_sided_by_quadrature(t, 12.0),
                                          1e-9));
    CHECK(fit.p_value > 0.046);
    CHECK(fit.p_value < 0.057);
    CHECK_THAT(fit.p_value, Catch::Matchers::WithinAbs(0.0512, 0.005));
  }
  {
    const PairedSeries s = series_with_r(8, -0.95);
    const RegressionFit fit = ols(s);
    REQUIRE_THAT(fit.r, Catch::Matchers::WithinAbs(-0.95, 1e-12));
    const double t = 0.95 * std::sqrt(6.0) / std::sqrt(1.0 - 0.95 * 0.95);
    CHECK_THAT(fit.p_value,
               Catch::Matchers::WithinAbs(p_two_sided_by_quadrature(t, 6.0),
                                          1e-9));
    CHECK(fit.p_value <= 0.001);
  }
}

TEST_CASE("ols equals the raw-moment closed form on random data") {
  DetRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    PairedSeries s;
    for (std::size_t i = 0; i < n; ++i) {
      s.labels.push_back(std::to_string(i));
      s.x.push_back(rng.normal(0.0, 2.0));
      s.y.push_back(rng.normal(1.0, 3.0));
    }
    const RegressionFit fit = ols(s);

    // Brute force through raw moments and Cramer's rule.
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += s.x[i];
      sy += s.y[i];
      sxx += static_cast<long double>(s.x[i]) * s.x[i];
      sxy += static_cast<long double>(s.x[i]) * s.y[i];
    }
    const long double det = static_cast<long double>(n) * sxx - sx * sx;
    const double beta1 = static_cast<double>((n * sxy - sx * sy) / det);
    const double beta0 = static_cast<double>((sxx * sy - sx * sxy) / det);
    CHECK_THAT(fit.beta1, Catch::Matchers::WithinAbs(beta1, 1e-12));
    CHECK_THAT(fit.beta0, Catch::Matchers::WithinAbs(beta0, 1e-12));

    // Normal equations.
    double resid_sum = 0.0, resid_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      resid_sum += fit.residuals[i];
      resid_x += fit.residuals[i] * s.x[i];
    }
    CHECK_THAT(resid_sum, Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_THAT(resid_x, Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK(((fit.beta1 >= 0 && fit.r >= 0) || (fit.beta1 <= 0 && fit.r <= 0)));
  }
}

TEST_CASE("larger |r| never raises the p-value at fixed n") {
  for (std::size_t n : {5u, 14u, 30u}) {
    double prev = 1.1;
    for (double r = 0.05; r < 0.99; r += 0.05) {
      const double p = pearson_p_value(r, n);
      CHECK(p <= prev + 1e-15);
      prev = p;
    }
  }
}

TEST_CASE("degenerate regressions are rejected") {
  PairedSeries constant;
  for (int i = 0; i < 4; ++i) {
    constant.labels.push_back(std::to_string(i));
    constant.x.push_back(1.0);
    constant.y.push_back(i);
  }
  REQUIRE_THROWS_AS(ols(constant), ZeroVariance);

  PairedSeries two;
  two.labels = {"a", "b"};
  two.x = {0.0, 1.0};
  two.y = {0.0, 1.0};
  REQUIRE_THROWS_AS(ols(two), TooFewPoints);

  PairedSeries nonfinite;
  nonfinite.labels = {"a", "b", "c"};
  nonfinite.x = {0.0, 1.0, 2.0};
  nonfinite.y = {0.0, std::nan(""), 2.0};
  REQUIRE_THROWS_AS(ols(nonfinite), InvariantViolation);
}

TEST_CASE("joining disjoint label sets is InsufficientOverlap") {
  REQUIRE_THROWS_AS(
      correlate_with_series({{"a", 1.0}, {"b", 2.0}, {"c", 3.0}},
                            {{"x", 1.0}, {"y", 2.0}, {"z", 3.0}}),
      InsufficientOverlap);
}

TEST_CASE("a series correlates perfectly with itself") {
  const std::vector<std::pair<std::string, double>> series = {
      {"a", 1.0}, {"b", 2.5}, {"c", -0.5}, {"d", 4.0}};
  const JoinedRegression reg = correlate_with_series(series, series);
  CHECK_THAT(reg.fit.r, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK(reg.unjoined_positions.empty());
  CHECK(reg.unjoined_series.empty());
}

TEST_CASE("label maps join positions onto differently keyed series") {
  const std::vector<std::pair<std::string, double>> positions = {
      {"m1", -1.0}, {"m2", 0.0}, {"m3", 1.0}, {"m4", 2.0}};
  const std::vector<std::pair<std::string, double>> series = {
      {"dept-a", 4.0}, {"dept-b", 3.0}, {"dept-c", 2.0}, {"dept-x", 9.0}};
  const std::map<std::string, std::string> join = {
      {"m1", "dept-a"}, {"m2", "dept-b"}, {"m3", "dept-c"}, {"m4", "dept-missing"}};
  const JoinedRegression reg = correlate_with_series(positions, series, join);
  CHECK(reg.fit.n == 3);
  CHECK(reg.fit.beta1 < 0.0);
  REQUIRE(reg.unjoined_positions == std::vector<std::string>{"m4"});
  REQUIRE(reg.unjoined_series == std::vector<std::string>{"dept-x"});
}

TEST_CASE("subset_filter keeps order and rejects bad input") {
  PairedSeries s;
  for (int i = 0; i < 6; ++i) {
    s.labels.push_back("l" + std::to_string(i));
    s.x.push_back(i);
    s.y.push_back(-i);
  }
  const PairedSeries all = subset_filter(s, {s.labels.begin(), s.labels.end()});
  CHECK(all.labels == s.labels);

  const PairedSeries some = subset_filter(s, {"l4", "l1"});
  CHECK(some.labels == std::vector<std::string>{"l1", "l4"});

  REQUIRE_THROWS_AS(subset_filter(s, std::set<std::string>{}), EmptyResult);
  REQUIRE_THROWS_AS(subset_filter(s, {"nope"}), InvariantViolation);
}
