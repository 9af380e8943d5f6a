#pragma once

namespace lodrec {

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x). Uses the power
/// series for x < a + 1 and a Lentz continued fraction otherwise, so neither
/// tail loses precision to cancellation.
double regularized_gamma_q(double a, double x);

/// P(X >= statistic) for X ~ chi-square(df).
double chi_square_upper_tail(double statistic, double df);

}  // namespace lodrec
