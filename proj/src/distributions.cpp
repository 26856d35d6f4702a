#include "gambench/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gambench::dist {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEpsilon = 1e-16;

// Series expansion of P(a, x); converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double denom = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x); converges fast for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction core of the regularized incomplete beta (Lentz).
double beta_continued_fraction(double x, double a, double b) {
  const double tiny = 1e-300;
  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

void check_df(double df, const char* name) {
  if (!(df >= 1.0) || !std::isfinite(df)) {
    throw std::invalid_argument(std::string("distribution: ") + name + " must be >= 1");
  }
}

}  // namespace

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / 1.4142135623730950488);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_p: a must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("regularized_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double chi_square_cdf(double x, double df) {
  check_df(df, "chi-square df");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(df / 2.0, x / 2.0);
}

double student_t_cdf(double x, double df) {
  check_df(df, "t df");
  if (x == 0.0) return 0.5;
  double tail = 0.5 * regularized_beta(df / (df + x * x), df / 2.0, 0.5);
  return x > 0.0 ? 1.0 - tail : tail;
}

double f_cdf(double x, double df1, double df2) {
  check_df(df1, "F df1");
  check_df(df2, "F df2");
  if (x <= 0.0) return 0.0;
  return regularized_beta(df1 * x / (df1 * x + df2), df1 / 2.0, df2 / 2.0);
}

double cdf(Kind kind, double df1, double df2, double x) {
  switch (kind) {
    case Kind::Normal: return normal_cdf(x);
    case Kind::ChiSquare: return chi_square_cdf(x, df1);
    case Kind::StudentT: return student_t_cdf(x, df1);
    case Kind::F: return f_cdf(x, df1, df2);
  }
  throw std::logic_error("unreachable distribution kind");
}

double survival(Kind kind, double df1, double df2, double x) {
  switch (kind) {
    case Kind::Normal:
      return 0.5 * std::erfc(x / 1.4142135623730950488);
    case Kind::ChiSquare: {
      check_df(df1, "chi-square df");
      if (x <= 0.0) return 1.0;
      double a = df1 / 2.0;
      double half = x / 2.0;
      if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
      return gamma_q_continued_fraction(a, half);
    }
    case Kind::StudentT: {
      check_df(df1, "t df");
      if (x == 0.0) return 0.5;
      double tail = 0.5 * regularized_beta(df1 / (df1 + x * x), df1 / 2.0, 0.5);
      return x > 0.0 ? tail : 1.0 - tail;
    }
    case Kind::F: {
      check_df(df1, "F df1");
      check_df(df2, "F df2");
      if (x <= 0.0) return 1.0;
      if (std::isinf(x)) return 0.0;
      // I_{1-y}(b, a) = 1 - I_y(a, b), evaluated directly for tail precision.
      return regularized_beta(df2 / (df1 * x + df2), df2 / 2.0, df1 / 2.0);
    }
  }
  throw std::logic_error("unreachable distribution kind");
}

}  // namespace gambench::dist
