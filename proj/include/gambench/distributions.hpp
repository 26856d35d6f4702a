#pragma once

namespace gambench::dist {

enum class Kind { Normal, ChiSquare, StudentT, F };

// Standard normal CDF via erfc; absolute error well under 1e-10.
double normal_cdf(double z);

// Regularized lower incomplete gamma P(a, x): series for x < a + 1,
// continued fraction for the complement otherwise.
double regularized_gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction,
// using the symmetry transform for x beyond the central region.
double regularized_beta(double x, double a, double b);

double chi_square_cdf(double x, double df);
double student_t_cdf(double x, double df);
double f_cdf(double x, double df1, double df2);

// Unified entry point. params: Normal ignores both; ChiSquare uses df1;
// StudentT uses df1; F uses df1/df2. Throws std::invalid_argument on a
// non-positive df.
double cdf(Kind kind, double df1, double df2, double x);

// Upper tail 1 - cdf, computed to preserve precision in the far tail where
// the tests live.
double survival(Kind kind, double df1, double df2, double x);

}  // namespace gambench::dist
