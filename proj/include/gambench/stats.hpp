#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gambench::stats {

enum class EffectKind { None, RankBiserial, CohensD, CramersV, SpearmanRho, PointBiserial };

std::string to_string(EffectKind kind);

struct TestResult {
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
  double effect_size = std::numeric_limits<double>::quiet_NaN();
  EffectKind effect_kind = EffectKind::None;
  std::vector<std::size_t> n_values;
  std::vector<double> df;
  std::string method_notes;
};

// Ranks 1..n with ties assigned the mean of the ranks they span, so the rank
// sum is always n(n+1)/2.
std::vector<double> rank_with_ties(std::span<const double> values);

enum class MwuMethod { Auto, Exact, NormalApprox };

// Two-sided Mann-Whitney U. statistic is U1 counted on sample `a`
// (#{a_i > b_j} plus half the ties); the effect size is the rank-biserial
// r = 1 - 2*U1/(n1*n2), so complete separation with `a` below `b` gives +1.
// Auto uses exact enumeration when both samples have <= 12 values and no
// ties cross the pooled data, otherwise a normal approximation with
// tie-corrected variance and continuity correction. Exact requires tie-free
// input.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          MwuMethod method = MwuMethod::Auto);

// Kruskal-Wallis H with tie correction; p from the chi-square survival
// function with k-1 degrees of freedom. Identical values across all groups
// give H = 0, p = 1.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

// ANOVA reconstructed from per-group means, standard deviations and sizes.
TestResult anova_from_summary(std::span<const double> means, std::span<const double> sds,
                              std::span<const std::size_t> ns);

// |mean2 - mean1| / sqrt((sd1^2 + sd2^2) / 2); the unweighted variance
// average, not the n-weighted pooled form.
double cohens_d_avgvar(double mean1, double sd1, double mean2, double sd2);

// Pearson correlation between values and a binary flag coded 0/1; p via the
// t transform with n-2 degrees of freedom.
TestResult point_biserial(std::span<const double> values, std::span<const int> flags);

// Spearman's rho as the Pearson correlation of tie-averaged ranks.
TestResult spearman(std::span<const double> x, std::span<const double> y);

// Chi-square independence test on an r x c count table; all-zero rows and
// columns are dropped with a method note. Effect size is Cramer's V.
TestResult chi_square_independence(const std::vector<std::vector<double>>& table);

double bonferroni_adjust(double p, int m);
double bonferroni_threshold(double alpha, int m);

// Display convention for human-readable reports; machine output keeps the
// raw value.
inline constexpr double kPValueDisplayFloor = 2.2e-16;
std::string format_p_value(double p);

double mean(std::span<const double> values);
double sample_sd(std::span<const double> values);
double median(std::vector<double> values);

}  // namespace gambench::stats
