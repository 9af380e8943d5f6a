#include "lodrec/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lodrec/error.hpp"

namespace lodrec {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

// log(x^a e^-x / Gamma(a))
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by the series  e^-x x^a / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n)).
double series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) {
      return sum * std::exp(log_prefactor(a, x));
    }
  }
  throw Error("incomplete gamma series did not converge");
}

// Q(a, x) by the continued fraction, modified Lentz evaluation.
double continued_fraction_q(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return std::exp(log_prefactor(a, x)) * h;
  }
  throw Error("incomplete gamma continued fraction did not converge");
}

void check_domain(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isinf(a)) {
    throw std::domain_error("incomplete gamma requires a > 0 and x >= 0");
  }
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_domain(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return series_p(a, x);
  return 1.0 - continued_fraction_q(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_domain(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - series_p(a, x);
  return continued_fraction_q(a, x);
}

double chi_square_upper_tail(double statistic, double df) {
  if (!(df > 0.0)) throw std::domain_error("chi-square degrees of freedom must be positive");
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

}  // namespace lodrec
