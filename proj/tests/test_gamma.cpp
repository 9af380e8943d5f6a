#include <cmath>
#include <random>
#include <stdexcept>

#include <catch_amalgamated.hpp>

#include "lodrec/gamma.hpp"
#include "support/oracles.hpp"

using namespace lodrec;

namespace {

bool close_rel(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

}  // namespace

TEST_CASE("upper tail matches frozen reference values", "[gamma]") {
  struct Case {
    double x, df, p;
  };
  const Case cases[] = {
      {0.5, 1, 0.47950012218695337},
      {3.84, 1, 0.05004352124870519},
      {15.147057449282737, 3, 0.0016951944119971292},
      {50, 10, 2.669083424904495e-07},
      {0.05, 2, 0.9753099120283326},
      {100, 4, 9.836624224615988e-21},
      {7.8, 3, 0.050331097859853326},
  };
  for (const auto& c : cases) {
    INFO("x=" << c.x << " df=" << c.df);
    CHECK(close_rel(chi_square_upper_tail(c.x, c.df), c.p, 1e-10));
  }
  CHECK(close_rel(regularized_gamma_q(2.5, 1e-3), 0.9999999904914654, 1e-12));
  CHECK(close_rel(regularized_gamma_q(30, 25), 0.8178960840225449, 1e-10));
}

TEST_CASE("upper tail matches quadrature of the density", "[gamma][property]") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> xs(0.05, 50.0);
  for (int i = 0; i < 20; ++i) {
    double df = 1 + static_cast<double>(rng() % 10);
    double x = xs(rng);
    double expected = oracle::chi_square_tail_by_quadrature(x, df);
    INFO("x=" << x << " df=" << df);
    CHECK(std::fabs(chi_square_upper_tail(x, df) - expected) <= 1e-6);
  }
}

TEST_CASE("P and Q are complementary and bounded", "[gamma][property]") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> as(0.1, 40.0), xs(0.0, 80.0);
  for (int i = 0; i < 500; ++i) {
    double a = as(rng), x = xs(rng);
    double p = regularized_gamma_p(a, x), q = regularized_gamma_q(a, x);
    CHECK(p >= 0.0);
    CHECK(q <= 1.0);
    CHECK(std::fabs(p + q - 1.0) <= 1e-12);
  }
}

TEST_CASE("gamma edge cases", "[gamma]") {
  CHECK(chi_square_upper_tail(0.0, 3) == 1.0);
  CHECK(regularized_gamma_q(1.0, 0.0) == 1.0);
  // Q(1, x) = exp(-x).
  CHECK(close_rel(regularized_gamma_q(1.0, 3.0), std::exp(-3.0), 1e-13));
  CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(regularized_gamma_q(1.0, -1.0), std::domain_error);
}
