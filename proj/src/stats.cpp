#include "gambench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "gambench/distributions.hpp"

namespace gambench::stats {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
  }
}

// Sum of t^3 - t over tie groups of the pooled sorted values.
double tie_term(std::vector<double> pooled) {
  std::sort(pooled.begin(), pooled.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    double t = static_cast<double>(j - i);
    if (t > 1.0) total += t * t * t - t;
    i = j;
  }
  return total;
}

bool has_ties(const std::vector<double>& pooled) {
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

// Null distribution counts of the Mann-Whitney U statistic for sample sizes
// (m, n) without ties: f(u; m, n) = f(u - n; m - 1, n) + f(u; m, n - 1),
// from conditioning on which sample contributes the largest pooled value.
std::vector<double> exact_u_counts(std::size_t m, std::size_t n) {
  std::size_t u_max = m * n;
  // f(u; mi, 0) = [u == 0]
  std::vector<std::vector<double>> prev(m + 1, std::vector<double>(u_max + 1, 0.0));
  for (std::size_t mi = 0; mi <= m; ++mi) prev[mi][0] = 1.0;
  for (std::size_t ni = 1; ni <= n; ++ni) {
    std::vector<std::vector<double>> cur(m + 1, std::vector<double>(u_max + 1, 0.0));
    cur[0][0] = 1.0;  // f(u; 0, ni) = [u == 0]
    for (std::size_t mi = 1; mi <= m; ++mi) {
      for (std::size_t u = 0; u <= mi * ni; ++u) {
        double ways = u >= ni ? cur[mi - 1][u - ni] : 0.0;
        ways += prev[mi][u];
        cur[mi][u] = ways;
      }
    }
    prev = std::move(cur);
  }
  return prev[m];
}

double pearson(std::span<const double> x, std::span<const double> y) {
  std::size_t n = x.size();
  double mx = mean(x);
  double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("correlation: zero variance input");
  }
  return sxy / std::sqrt(sxx * syy);
}

// Two-sided p for a correlation coefficient via the t transform.
double correlation_p_value(double r, std::size_t n) {
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  double df = static_cast<double>(n - 2);
  if (std::fabs(r) >= 1.0) return 0.0;
  double t = r * std::sqrt(df / (1.0 - r * r));
  double p = 2.0 * dist::survival(dist::Kind::StudentT, df, 0.0, std::fabs(t));
  return std::min(p, 1.0);
}

}  // namespace

std::string to_string(EffectKind kind) {
  switch (kind) {
    case EffectKind::None: return "none";
    case EffectKind::RankBiserial: return "rank_biserial_r";
    case EffectKind::CohensD: return "cohens_d";
    case EffectKind::CramersV: return "cramers_v";
    case EffectKind::SpearmanRho: return "spearman_rho";
    case EffectKind::PointBiserial: return "point_biserial_r";
  }
  throw std::logic_error("unreachable effect kind");
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: empty input");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  std::size_t n = values.size();
  if (n < 2) return 0.0;
  double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("rank_with_ties: empty input");
  require_finite(values, "rank_with_ties");
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          MwuMethod method) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
  require_finite(a, "mann_whitney_u");
  require_finite(b, "mann_whitney_u");
  std::size_t n1 = a.size();
  std::size_t n2 = b.size();
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = rank_with_ties(pooled);
  double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n1), 0.0);
  double u1 = r1 - static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;
  double n1n2 = static_cast<double>(n1) * static_cast<double>(n2);

  TestResult result;
  result.statistic = u1;
  result.effect_size = 1.0 - 2.0 * u1 / n1n2;
  result.effect_kind = EffectKind::RankBiserial;
  result.n_values = {n1, n2};

  bool ties = has_ties(pooled);
  bool use_exact = method == MwuMethod::Exact ||
                   (method == MwuMethod::Auto && n1 <= 12 && n2 <= 12 && !ties);
  if (use_exact && ties) {
    throw std::invalid_argument("mann_whitney_u: exact method requires tie-free samples");
  }
  if (use_exact) {
    std::vector<double> counts = exact_u_counts(n1, n2);
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    auto u_int = static_cast<std::size_t>(std::llround(u1));
    double cdf_lo = 0.0, sf_hi = 0.0;
    for (std::size_t u = 0; u <= u_int; ++u) cdf_lo += counts[u];
    for (std::size_t u = u_int; u < counts.size(); ++u) sf_hi += counts[u];
    double p = 2.0 * std::min(cdf_lo, sf_hi) / total;
    result.p_value = std::min(p, 1.0);
    result.method_notes = "exact enumeration";
  } else {
    double n = static_cast<double>(n1 + n2);
    double tie_corr = ties ? tie_term(pooled) / (n * (n - 1.0)) : 0.0;
    double variance = n1n2 / 12.0 * ((n + 1.0) - tie_corr);
    if (variance <= 0.0) {
      // All pooled values identical: no evidence either way.
      result.p_value = 1.0;
      result.method_notes = "degenerate (all values tied)";
      return result;
    }
    double meanU = n1n2 / 2.0;
    double z = (std::fabs(u1 - meanU) - 0.5) / std::sqrt(variance);
    z = std::max(z, 0.0);
    double tail = dist::survival(dist::Kind::Normal, 0.0, 0.0, z);
    // Second-order Edgeworth term. The null distribution of U is symmetric,
    // so only the kurtosis term enters; its excess kurtosis is
    // -(6/5)(m^2 + n^2 + mn + m + n) / (mn(m+n+1)). Keeps the small-sample
    // approximation within 0.02 of exact enumeration down to n = 3.
    double m1 = static_cast<double>(n1);
    double m2 = static_cast<double>(n2);
    double kurtosis =
        -1.2 * (m1 * m1 + m2 * m2 + m1 * m2 + m1 + m2) / (m1 * m2 * (m1 + m2 + 1.0));
    double phi = std::exp(-0.5 * z * z) / 2.5066282746310005;
    tail += phi * (kurtosis / 24.0) * (z * z * z - 3.0 * z);
    tail = std::clamp(tail, 0.0, 1.0);
    result.p_value = std::min(2.0 * tail, 1.0);
    result.method_notes =
        ties ? "normal approximation, tie-corrected variance, continuity and kurtosis correction"
             : "normal approximation, continuity and kurtosis correction";
  }
  return result;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need >= 2 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("kruskal_wallis: empty group");
    require_finite(g, "kruskal_wallis");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  double n = static_cast<double>(pooled.size());
  std::vector<double> ranks = rank_with_ties(pooled);

  TestResult result;
  result.effect_kind = EffectKind::None;
  result.df = {static_cast<double>(groups.size() - 1)};
  for (const auto& g : groups) result.n_values.push_back(g.size());

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    h += rank_sum * rank_sum / static_cast<double>(g.size());
    offset += g.size();
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
  if (correction <= 0.0) {
    // Every pooled value identical.
    result.statistic = 0.0;
    result.p_value = 1.0;
    result.method_notes = "degenerate (all values tied)";
    return result;
  }
  h /= correction;
  // Guard tiny negative drift from float cancellation when all ranks agree.
  if (h < 0.0 && h > -1e-9) h = 0.0;
  result.statistic = h;
  result.p_value = dist::survival(dist::Kind::ChiSquare, result.df[0], 0.0, h);
  result.method_notes = "tie-corrected H, chi-square approximation";
  return result;
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("one_way_anova: need >= 2 groups");
  std::vector<double> means_v, sds_v;
  std::vector<std::size_t> ns_v;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("one_way_anova: empty group");
    require_finite(g, "one_way_anova");
    means_v.push_back(mean(g));
    sds_v.push_back(sample_sd(g));
    ns_v.push_back(g.size());
  }
  return anova_from_summary(means_v, sds_v, ns_v);
}

TestResult anova_from_summary(std::span<const double> means, std::span<const double> sds,
                              std::span<const std::size_t> ns) {
  std::size_t k = means.size();
  if (k < 2 || sds.size() != k || ns.size() != k) {
    throw std::invalid_argument("anova_from_summary: need >= 2 matched groups");
  }
  double n_total = 0.0;
  double grand_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (ns[i] < 2) throw std::invalid_argument("anova_from_summary: each group needs n >= 2");
    n_total += static_cast<double>(ns[i]);
    grand_sum += static_cast<double>(ns[i]) * means[i];
  }
  double grand_mean = grand_sum / n_total;
  double ssb = 0.0, ssw = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double d = means[i] - grand_mean;
    ssb += static_cast<double>(ns[i]) * d * d;
    ssw += static_cast<double>(ns[i] - 1) * sds[i] * sds[i];
  }
  double df1 = static_cast<double>(k - 1);
  double df2 = n_total - static_cast<double>(k);

  TestResult result;
  result.effect_kind = EffectKind::None;
  result.n_values.assign(ns.begin(), ns.end());
  result.df = {df1, df2};
  if (ssw == 0.0) {
    if (ssb == 0.0) {
      result.statistic = 0.0;
      result.p_value = 1.0;
      result.method_notes = "degenerate (no variance anywhere)";
    } else {
      result.statistic = std::numeric_limits<double>::infinity();
      result.p_value = 0.0;
      result.method_notes = "zero within-group variance with unequal means";
    }
    return result;
  }
  double f = (ssb / df1) / (ssw / df2);
  result.statistic = f;
  result.p_value = dist::survival(dist::Kind::F, df1, df2, f);
  return result;
}

double cohens_d_avgvar(double mean1, double sd1, double mean2, double sd2) {
  if (sd1 < 0.0 || sd2 < 0.0) throw std::invalid_argument("cohens_d: negative sd");
  double avg_var = (sd1 * sd1 + sd2 * sd2) / 2.0;
  if (avg_var == 0.0) {
    if (mean1 == mean2) return 0.0;
    throw std::invalid_argument("cohens_d: both standard deviations are zero");
  }
  return std::fabs(mean2 - mean1) / std::sqrt(avg_var);
}

TestResult point_biserial(std::span<const double> values, std::span<const int> flags) {
  if (values.size() != flags.size() || values.empty()) {
    throw std::invalid_argument("point_biserial: mismatched or empty inputs");
  }
  require_finite(values, "point_biserial");
  std::size_t ones = 0;
  for (int f : flags) {
    if (f != 0 && f != 1) throw std::invalid_argument("point_biserial: flags must be 0/1");
    ones += static_cast<std::size_t>(f);
  }
  if (ones == 0 || ones == flags.size()) {
    throw std::invalid_argument("point_biserial: both flag classes must be present");
  }
  std::vector<double> coded(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) coded[i] = static_cast<double>(flags[i]);
  double r = pearson(values, coded);

  TestResult result;
  result.statistic = r;
  result.effect_size = r;
  result.effect_kind = EffectKind::PointBiserial;
  result.n_values = {flags.size() - ones, ones};
  result.df = {static_cast<double>(values.size() - 2)};
  result.p_value = correlation_p_value(r, values.size());
  result.method_notes = "pearson with 0/1 coding, t-transform p";
  return result;
}

TestResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 3) throw std::invalid_argument("spearman: need n >= 3");
  require_finite(x, "spearman");
  require_finite(y, "spearman");
  std::vector<double> rx = rank_with_ties(x);
  std::vector<double> ry = rank_with_ties(y);
  double rho = pearson(rx, ry);

  TestResult result;
  result.statistic = rho;
  result.effect_size = rho;
  result.effect_kind = EffectKind::SpearmanRho;
  result.n_values = {x.size()};
  result.df = {static_cast<double>(x.size() - 2)};
  result.p_value = correlation_p_value(rho, x.size());
  result.method_notes = "pearson on tie-averaged ranks, t-approximation p";
  return result;
}

TestResult chi_square_independence(const std::vector<std::vector<double>>& table) {
  std::size_t rows = table.size();
  if (rows < 2) throw std::invalid_argument("chi_square: need >= 2 rows");
  std::size_t cols = table.front().size();
  if (cols < 2) throw std::invalid_argument("chi_square: need >= 2 columns");
  for (const auto& row : table) {
    if (row.size() != cols) throw std::invalid_argument("chi_square: ragged table");
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("chi_square: counts must be non-negative");
      }
    }
  }

  std::vector<double> row_sums(rows, 0.0), col_sums(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      row_sums[i] += table[i][j];
      col_sums[j] += table[i][j];
      total += table[i][j];
    }
  }
  if (total <= 0.0) throw std::invalid_argument("chi_square: empty table");

  std::size_t kept_rows = 0, kept_cols = 0;
  for (double s : row_sums) kept_rows += s > 0.0 ? 1 : 0;
  for (double s : col_sums) kept_cols += s > 0.0 ? 1 : 0;
  bool dropped = kept_rows != rows || kept_cols != cols;
  if (kept_rows < 2 || kept_cols < 2) {
    throw std::invalid_argument("chi_square: table degenerate after dropping empty rows/columns");
  }

  double chi2 = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sums[i] == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (col_sums[j] == 0.0) continue;
      double expected = row_sums[i] * col_sums[j] / total;
      double d = table[i][j] - expected;
      chi2 += d * d / expected;
    }
  }
  double df = static_cast<double>((kept_rows - 1) * (kept_cols - 1));
  double min_dim = static_cast<double>(std::min(kept_rows, kept_cols) - 1);

  TestResult result;
  result.statistic = chi2;
  result.effect_size = std::sqrt(chi2 / (total * min_dim));
  result.effect_kind = EffectKind::CramersV;
  result.n_values = {static_cast<std::size_t>(std::llround(total))};
  result.df = {df};
  result.p_value = dist::survival(dist::Kind::ChiSquare, df, 0.0, chi2);
  if (dropped) result.method_notes = "empty rows/columns dropped";
  return result;
}

double bonferroni_adjust(double p, int m) {
  if (m < 1) throw std::invalid_argument("bonferroni: m must be >= 1");
  return std::min(1.0, p * static_cast<double>(m));
}

double bonferroni_threshold(double alpha, int m) {
  if (m < 1) throw std::invalid_argument("bonferroni: m must be >= 1");
  return alpha / static_cast<double>(m);
}

std::string format_p_value(double p) {
  if (std::isnan(p)) return "NaN";
  if (p < kPValueDisplayFloor) return "< 2.2e-16";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", p);
  return buf;
}

}  // namespace gambench::stats
