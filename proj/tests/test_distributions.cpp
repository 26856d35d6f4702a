#include <doctest.h>

#include <cmath>
#include <utility>

#include "gambench/distributions.hpp"
#include "oracles.hpp"

using gambench::dist::Kind;

TEST_CASE("normal cdf symmetry and known values") {
  CHECK(gambench::dist::normal_cdf(0.0) == 0.5);
  CHECK(gambench::dist::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(gambench::dist::normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
  for (double z : {-3.0, -1.2, 0.3, 2.7}) {
    CHECK(gambench::dist::normal_cdf(z) + gambench::dist::normal_cdf(-z) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("normal cdf against quadrature oracle on a dense grid") {
  for (int i = 0; i <= 1000; ++i) {
    double z = -8.0 + 16.0 * i / 1000.0;
    double got = gambench::dist::cdf(Kind::Normal, 0, 0, z);
    double want = oracles::normal_cdf(z);
    CHECK(std::fabs(got - want) <= 1e-10);
  }
}

TEST_CASE("chi-square cdf against quadrature oracle") {
  const double dfs[] = {1, 2, 3, 5, 12, 30};
  for (double df : dfs) {
    double hi = df * 4 + 20;
    for (int i = 1; i <= 200; ++i) {
      double x = hi * i / 200.0;
      double got = gambench::dist::cdf(Kind::ChiSquare, df, 0, x);
      double want = oracles::chi_square_cdf(x, df);
      CHECK(std::fabs(got - want) <= 1e-8);
    }
  }
}

TEST_CASE("chi-square critical value") {
  // Published 95th percentile at df=1 is 3.841.
  CHECK(gambench::dist::cdf(Kind::ChiSquare, 1, 0, 3.841) == doctest::Approx(0.950).epsilon(2e-4));
}

TEST_CASE("student t cdf against quadrature oracle") {
  const double dfs[] = {1, 2, 5, 10, 30, 120};
  for (double df : dfs) {
    CHECK(gambench::dist::cdf(Kind::StudentT, df, 0, 0.0) == 0.5);
    for (int i = 0; i <= 200; ++i) {
      double x = -8.0 + 16.0 * i / 200.0;
      double got = gambench::dist::cdf(Kind::StudentT, df, 0, x);
      double want = oracles::student_t_cdf(x, df);
      CHECK(std::fabs(got - want) <= 1e-8);
    }
  }
}

TEST_CASE("F cdf against quadrature oracle") {
  const std::pair<double, double> dfs[] = {{2, 6947}, {2, 10}, {3, 7}, {5, 20}, {10, 5}};
  for (auto [d1, d2] : dfs) {
    for (int i = 1; i <= 200; ++i) {
      double x = 8.0 * i / 200.0;
      double got = gambench::dist::cdf(Kind::F, d1, d2, x);
      double want = oracles::f_cdf(x, d1, d2);
      CHECK(std::fabs(got - want) <= 1e-8);
    }
  }
}

TEST_CASE("cdfs are monotone non-decreasing") {
  auto check_monotone = [](Kind kind, double d1, double d2, double lo, double hi) {
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
      double x = lo + (hi - lo) * i / 500.0;
      double value = gambench::dist::cdf(kind, d1, d2, x);
      CHECK(value >= prev);
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
      prev = value;
    }
  };
  check_monotone(Kind::Normal, 0, 0, -10, 10);
  check_monotone(Kind::ChiSquare, 4, 0, 0, 60);
  check_monotone(Kind::StudentT, 7, 0, -12, 12);
  check_monotone(Kind::F, 3, 9, 0, 40);
}

TEST_CASE("survival is the precise complement, including far tails") {
  // survival keeps precision where 1 - cdf would round to zero.
  double s = gambench::dist::survival(Kind::Normal, 0, 0, 10.0);
  CHECK(s > 0.0);
  CHECK(s < 1e-20);
  double s_chi = gambench::dist::survival(Kind::ChiSquare, 2, 0, 400.0);
  CHECK(s_chi > 0.0);
  CHECK(s_chi < 1e-80);
  for (double x : {0.5, 1.0, 3.0}) {
    double total = gambench::dist::cdf(Kind::ChiSquare, 5, 0, x) +
                   gambench::dist::survival(Kind::ChiSquare, 5, 0, x);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double x : {0.2, 1.5, 4.0}) {
    double total =
        gambench::dist::cdf(Kind::F, 4, 11, x) + gambench::dist::survival(Kind::F, 4, 11, x);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("invalid degrees of freedom are rejected") {
  CHECK_THROWS_AS(gambench::dist::cdf(Kind::ChiSquare, 0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gambench::dist::cdf(Kind::StudentT, -3, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gambench::dist::cdf(Kind::F, 2, 0, 1.0), std::invalid_argument);
}
