#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gambench/stats.hpp"
#include "oracles.hpp"

using namespace gambench;

TEST_CASE("rank_with_ties assigns average ranks") {
  CHECK(stats::rank_with_ties(std::vector<double>{10, 20, 30}) ==
        std::vector<double>{1, 2, 3});
  CHECK(stats::rank_with_ties(std::vector<double>{10, 20, 20, 30}) ==
        std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(stats::rank_with_ties(std::vector<double>{7, 7, 7}) == std::vector<double>{2, 2, 2});
  CHECK_THROWS_AS(stats::rank_with_ties(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("rank_with_ties matches the naive definition and sums to n(n+1)/2") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 40;
    std::vector<double> values(n);
    for (double& v : values) v = static_cast<double>(rng() % 10);  // many ties
    std::vector<double> ranks = stats::rank_with_ties(values);
    std::vector<double> want = oracles::ranks_naive(values);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ranks[i] == doctest::Approx(want[i]).epsilon(1e-12));
      sum += ranks[i];
    }
    CHECK(sum == doctest::Approx(n * (n + 1) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("mann-whitney U statistic and rank-biserial effect") {
  SUBCASE("complete separation") {
    stats::TestResult r =
        stats::mann_whitney_u(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
    CHECK(r.statistic == 0.0);
    CHECK(r.effect_size == 1.0);
  }
  SUBCASE("identical samples with ties") {
    stats::TestResult r =
        stats::mann_whitney_u(std::vector<double>{1, 2}, std::vector<double>{1, 2});
    CHECK(r.statistic == 2.0);  // 1 pair a > b plus two half-ties
    CHECK(r.effect_size == 0.0);
  }
  SUBCASE("paper convention reproduces r = 0.901 from U = 1113 at 150/150") {
    double r = 1.0 - 2.0 * 1113.0 / (150.0 * 150.0);
    CHECK(r == doctest::Approx(0.901).epsilon(1e-3));
  }
  SUBCASE("empty sample throws") {
    CHECK_THROWS_AS(stats::mann_whitney_u(std::vector<double>{}, std::vector<double>{1}),
                    std::invalid_argument);
  }
}

TEST_CASE("mann-whitney U1 matches brute-force pair counting") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n1 = 1 + rng() % 15;
    std::size_t n2 = 1 + rng() % 15;
    std::vector<double> a(n1), b(n2);
    for (double& v : a) v = static_cast<double>(rng() % 12);
    for (double& v : b) v = static_cast<double>(rng() % 12);
    stats::TestResult r = stats::mann_whitney_u(a, b);
    CHECK(r.statistic == doctest::Approx(oracles::mwu_u1_brute_force(a, b)).epsilon(1e-12));

    // U1 + U2 = n1 * n2, tie halves included.
    stats::TestResult r2 = stats::mann_whitney_u(b, a);
    CHECK(r.statistic + r2.statistic ==
          doctest::Approx(static_cast<double>(n1 * n2)).epsilon(1e-12));
    // Antisymmetric effect size.
    CHECK(r.effect_size == doctest::Approx(-r2.effect_size).epsilon(1e-12));
    CHECK(std::fabs(r.effect_size) <= 1.0 + 1e-12);

    // |r| = 1 exactly when the samples are completely separated.
    double max_a = *std::max_element(a.begin(), a.end());
    double min_a = *std::min_element(a.begin(), a.end());
    double max_b = *std::max_element(b.begin(), b.end());
    double min_b = *std::min_element(b.begin(), b.end());
    bool separated = max_a < min_b || max_b < min_a;
    CHECK((std::fabs(r.effect_size) == 1.0) == separated);
  }
}

TEST_CASE("exact mann-whitney p equals full enumeration") {
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 60) {
    std::size_t n1 = 2 + rng() % 5;
    std::size_t n2 = 2 + rng() % 5;
    std::vector<double> a(n1), b(n2);
    std::vector<double> pool;
    for (double& v : a) v = static_cast<double>(rng() % 1000) / 7.0;
    for (double& v : b) v = static_cast<double>(rng() % 1000) / 7.0;
    pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) continue;  // need tie-free
    stats::TestResult r = stats::mann_whitney_u(a, b, stats::MwuMethod::Exact);
    CHECK(r.p_value == doctest::Approx(oracles::mwu_exact_p_enumeration(a, b)).epsilon(1e-10));
    ++done;
  }
}

TEST_CASE("normal approximation agrees with exact enumeration within 0.02") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 200) {
    std::size_t n1 = 3 + rng() % 6;  // 3..8
    std::size_t n2 = 3 + rng() % 6;
    std::vector<double> a(n1), b(n2);
    for (double& v : a) v = static_cast<double>(rng() % 100000);
    for (double& v : b) v = static_cast<double>(rng() % 100000);
    std::vector<double> pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) continue;
    double exact = stats::mann_whitney_u(a, b, stats::MwuMethod::Exact).p_value;
    double approx = stats::mann_whitney_u(a, b, stats::MwuMethod::NormalApprox).p_value;
    CHECK(std::fabs(exact - approx) <= 0.02);
    ++done;
  }
}

TEST_CASE("kruskal-wallis hand-checked values") {
  stats::TestResult r = stats::kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(r.statistic == doctest::Approx(7.2).epsilon(1e-12));
  CHECK(r.df[0] == 2.0);

  stats::TestResult two = stats::kruskal_wallis({{1, 2}, {3, 4}});
  CHECK(two.statistic == doctest::Approx(2.4).epsilon(1e-12));

  stats::TestResult degenerate = stats::kruskal_wallis({{5, 5}, {5, 5}, {5, 5}});
  CHECK(degenerate.statistic == 0.0);
  CHECK(degenerate.p_value == 1.0);
}

TEST_CASE("kruskal-wallis is invariant under strictly monotone transforms") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> groups(3);
    for (auto& g : groups) {
      std::size_t n = 3 + rng() % 10;
      g.resize(n);
      for (double& v : g) v = static_cast<double>(rng() % 50) - 25.0;
    }
    double h = stats::kruskal_wallis(groups).statistic;
    auto transform = [](std::vector<std::vector<double>> gs, auto f) {
      for (auto& g : gs) {
        for (double& v : g) v = f(v);
      }
      return gs;
    };
    double h_cubed =
        stats::kruskal_wallis(transform(groups, [](double v) { return v * v * v; })).statistic;
    double h_atan =
        stats::kruskal_wallis(transform(groups, [](double v) { return std::atan(v); })).statistic;
    CHECK(h == doctest::Approx(h_cubed).epsilon(1e-9));
    CHECK(h == doctest::Approx(h_atan).epsilon(1e-9));
  }
}

TEST_CASE("one-way anova") {
  SUBCASE("equal group means give F = 0") {
    stats::TestResult r = stats::one_way_anova({{1, 2, 3}, {1, 2, 3}});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
  }
  SUBCASE("two groups: F equals the squared pooled t statistic") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> a(4 + rng() % 8), b(4 + rng() % 8);
      for (double& v : a) v = static_cast<double>(rng() % 1000) / 13.0;
      for (double& v : b) v = static_cast<double>(rng() % 1000) / 13.0 + 2.0;
      double ma = stats::mean(a), mb = stats::mean(b);
      double sa = stats::sample_sd(a), sb = stats::sample_sd(b);
      double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
      double sp2 = ((na - 1) * sa * sa + (nb - 1) * sb * sb) / (na + nb - 2);
      double t = (ma - mb) / std::sqrt(sp2 * (1 / na + 1 / nb));
      stats::TestResult r = stats::one_way_anova({a, b});
      CHECK(r.statistic == doctest::Approx(t * t).epsilon(1e-9));
    }
  }
  SUBCASE("zero within-group variance with unequal means reports p = 0") {
    stats::TestResult r = stats::one_way_anova({{2, 2, 2}, {5, 5, 5}});
    CHECK(std::isinf(r.statistic));
    CHECK(r.p_value == 0.0);
    CHECK(!r.method_notes.empty());
  }
}

TEST_CASE("anova_from_summary reproduces the one-way anova on raw data") {
  std::mt19937_64 rng(31);
  std::vector<std::vector<double>> groups(3);
  std::vector<double> means, sds;
  std::vector<std::size_t> ns;
  for (auto& g : groups) {
    g.resize(5 + rng() % 10);
    for (double& v : g) v = static_cast<double>(rng() % 500) / 9.0;
    means.push_back(stats::mean(g));
    sds.push_back(stats::sample_sd(g));
    ns.push_back(g.size());
  }
  stats::TestResult raw = stats::one_way_anova(groups);
  stats::TestResult summary = stats::anova_from_summary(means, sds, ns);
  CHECK(raw.statistic == doctest::Approx(summary.statistic).epsilon(1e-9));
  CHECK(raw.p_value == doctest::Approx(summary.p_value).epsilon(1e-9));
}

TEST_CASE("cohens_d_avgvar reproduces published persona risk effects") {
  CHECK(stats::cohens_d_avgvar(17.53, 14.45, 40.23, 9.63) == doctest::Approx(1.849).epsilon(3e-3));
  CHECK(stats::cohens_d_avgvar(17.53, 14.45, 63.36, 5.94) == doctest::Approx(4.149).epsilon(2e-3));
  CHECK(stats::cohens_d_avgvar(40.23, 9.63, 63.36, 5.94) == doctest::Approx(2.891).epsilon(2e-3));
  CHECK(stats::cohens_d_avgvar(10, 2, 10, 3) == 0.0);
  CHECK_THROWS_AS(stats::cohens_d_avgvar(1, 0, 2, 0), std::invalid_argument);
}

TEST_CASE("point_biserial equals pearson with 0/1 coding") {
  std::vector<double> x = {1, 2, 3, 4};
  std::vector<int> flags = {0, 0, 1, 1};
  stats::TestResult r = stats::point_biserial(x, flags);
  CHECK(r.statistic == doctest::Approx(0.894427).epsilon(1e-5));

  std::vector<int> inverted = {1, 1, 0, 0};
  stats::TestResult ri = stats::point_biserial(x, inverted);
  CHECK(ri.statistic == doctest::Approx(-r.statistic).epsilon(1e-12));

  CHECK_THROWS_AS(stats::point_biserial(std::vector<double>{5, 5, 5, 5}, flags),
                  std::invalid_argument);
  CHECK_THROWS_AS(stats::point_biserial(x, std::vector<int>{1, 1, 1, 1}), std::invalid_argument);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 5 + rng() % 40;
    std::vector<double> values(n), coded(n);
    std::vector<int> f(n);
    bool any0 = false, any1 = false;
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = static_cast<double>(rng() % 10000) / 11.0;
      f[i] = static_cast<int>(rng() % 2);
      coded[i] = f[i];
      (f[i] ? any1 : any0) = true;
    }
    if (!any0 || !any1) continue;
    CHECK(stats::point_biserial(values, f).statistic ==
          doctest::Approx(oracles::pearson_naive(values, coded)).epsilon(1e-12));
  }
}

TEST_CASE("spearman") {
  std::vector<double> inc = {1, 5, 9, 20};
  std::vector<double> inc2 = {2, 3, 10, 50};
  CHECK(stats::spearman(inc, inc2).statistic == doctest::Approx(1.0));

  std::vector<double> x = {1, 2, 3};
  std::vector<double> y = {3, 1, 2};
  CHECK(stats::spearman(x, y).statistic == doctest::Approx(-0.5).epsilon(1e-12));

  std::vector<double> dec = {9, 7, 4, 1};
  CHECK(stats::spearman(inc, dec).statistic == doctest::Approx(-1.0));

  CHECK_THROWS_AS(stats::spearman(std::vector<double>{1, 1, 1}, x), std::invalid_argument);
  CHECK_THROWS_AS(stats::spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("spearman equals pearson on ranks, including ties") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 4 + rng() % 30;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng() % 8);  // heavy ties
      y[i] = static_cast<double>(rng() % 8);
    }
    std::vector<double> rx = oracles::ranks_naive(x);
    std::vector<double> ry = oracles::ranks_naive(y);
    bool cx = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    bool cy = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (cx || cy) continue;
    CHECK(stats::spearman(x, y).statistic ==
          doctest::Approx(oracles::pearson_naive(rx, ry)).epsilon(1e-12));
  }
}

TEST_CASE("no-tie spearman matches the d-squared shortcut") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 4 + rng() % 20;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(i) + static_cast<double>(rng() % 1000) * 1e-6;
      y[i] = static_cast<double>(rng() % 100000) + static_cast<double>(i) * 1e-6;
    }
    std::vector<double> rx = oracles::ranks_naive(x);
    std::vector<double> ry = oracles::ranks_naive(y);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    double shortcut = 1.0 - 6.0 * d2 / (static_cast<double>(n) * (n * n - 1.0));
    CHECK(stats::spearman(x, y).statistic == doctest::Approx(shortcut).epsilon(1e-9));
  }
}

TEST_CASE("chi-square independence") {
  SUBCASE("exact independence") {
    stats::TestResult r = stats::chi_square_independence({{10, 10}, {10, 10}});
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.effect_size == doctest::Approx(0.0));
  }
  SUBCASE("perfect association") {
    stats::TestResult r = stats::chi_square_independence({{20, 0}, {0, 20}});
    CHECK(r.statistic == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(r.effect_size == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("cramers v from published pooled table parameters") {
    // V = sqrt(chi2 / (N * min(r-1, c-1))) for chi2=3205.43, N=6950, 5x4.
    double v = std::sqrt(3205.43 / (6950.0 * 3.0));
    CHECK(v == doctest::Approx(0.392).epsilon(1e-3));
  }
  SUBCASE("zero row is dropped with a note") {
    stats::TestResult r = stats::chi_square_independence({{5, 10}, {0, 0}, {10, 5}});
    CHECK(r.df[0] == 1.0);
    CHECK(!r.method_notes.empty());
  }
  SUBCASE("degenerate after dropping") {
    CHECK_THROWS_AS(stats::chi_square_independence({{5, 10}, {0, 0}}), std::invalid_argument);
  }
}

TEST_CASE("bonferroni") {
  CHECK(stats::bonferroni_threshold(0.05, 3) == doctest::Approx(0.0167).epsilon(2e-3));
  CHECK(stats::bonferroni_adjust(0.4, 3) == 1.0);
  CHECK(stats::bonferroni_adjust(0.01, 1) == 0.01);
  CHECK_THROWS_AS(stats::bonferroni_adjust(0.1, 0), std::invalid_argument);
}

TEST_CASE("p value display floor") {
  CHECK(stats::format_p_value(1e-40) == "< 2.2e-16");
  CHECK(stats::format_p_value(0.03) == "0.03");
  CHECK(stats::format_p_value(2.2e-16) != "< 2.2e-16");
}
