#include "gateway/special.hpp"

#include <cmath>

#include "doctest.h"
#include "gateway/rng.hpp"

using namespace gateway;

namespace {

// independent oracle: Stirling's series with enough correction terms for
// x >= 9, shifted upward by the recurrence below that
long double stirling_ln_gamma(long double x) {
  if (x < 9.0L) return stirling_ln_gamma(x + 1.0L) - std::log(x);
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double series = inv / 12.0L;
  series -= inv * inv2 / 360.0L;
  series += inv * inv2 * inv2 / 1260.0L;
  series -= inv * inv2 * inv2 * inv2 / 1680.0L;
  series += inv * inv2 * inv2 * inv2 * inv2 / 1188.0L;
  return (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2.0L * 3.14159265358979323846264338328L) +
         series;
}

// 200-term extended-precision series for the normalized Bessel function
long double bessel_series_oracle(long double beta, long double z) {
  long double sum = 0.0L, term = 1.0L;
  for (int n = 0; n < 200; ++n) {
    sum += term;
    term *= -z / ((n + 1.0L) * (n + 1.0L + beta));
  }
  return sum;
}

long double modified_bessel_oracle(long double nu, long double z) {
  long double sum = 0.0L;
  long double term = std::exp((long double)(nu)*std::log(z / 2.0L) -
                              stirling_ln_gamma(nu + 1.0L));
  const long double q = z * z / 4.0L;
  for (int n = 0; n < 200; ++n) {
    sum += term;
    term *= q / ((n + 1.0L) * (n + 1.0L + nu));
  }
  return sum;
}

}  // namespace

TEST_CASE("ln_gamma at exact points and against the Stirling oracle") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  for (double x : {0.1, 0.37, 1.5, 2.0, 3.25, 7.0, 12.5, 80.0, 500.0}) {
    const double oracle = double(stirling_ln_gamma((long double)x));
    CHECK(std::abs(ln_gamma(x) - oracle) <= 1e-13 * std::max(1.0, std::abs(oracle)));
  }
  CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("gen_binom: falling-factorial products") {
  CHECK(gen_binom(3.7, 0) == 1.0);
  CHECK(gen_binom(5.0, 2) == doctest::Approx(10.0).epsilon(1e-15));
  // m_beta(n) at beta = 2 is n + 1
  for (int n = 0; n <= 12; ++n)
    CHECK(gen_binom(double(n) + 2.0 - 1.0, n) == doctest::Approx(double(n + 1)).epsilon(1e-14));
  // negative arguments go through the product form
  CHECK(gen_binom(-1.5, 3) ==
        doctest::Approx((-1.5) * (-2.5) * (-3.5) / 6.0).epsilon(1e-15));
  // product form times n! equals the explicit falling factorial
  RngStream rng(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const double a = rng.uniform(-8.0, 8.0);
    const int n = int(rng.uniform() * 10);
    double falling = 1.0, fact = 1.0;
    for (int i = 0; i < n; ++i) {
      falling *= a - i;
      fact *= i + 1.0;
    }
    CHECK(gen_binom(a, n) * fact ==
          doctest::Approx(falling).epsilon(1e-12));
  }
}

TEST_CASE("laguerre_poly: closed values and the three-term recurrence") {
  CHECK(laguerre_poly(0, 1.7, 3.3) == 1.0);
  CHECK(laguerre_poly(1, 2.5, 0.7) == doctest::Approx(2.5 - 0.7).epsilon(1e-15));
  // beta = 1 (classical index 0) at x = 1: 1 - 2 + 1/2
  CHECK(laguerre_poly(2, 1.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));

  // recurrence against the explicit sum, both evaluation regimes
  for (double beta : {0.5, 1.0, 2.7}) {
    for (double x : {0.0, 0.3, 2.0, 11.0, 50.0}) {
      for (int k = 1; k <= 30; ++k) {
        const double lhs = double(k + 1) * laguerre_poly(k + 1, beta, x);
        const double rhs = (2.0 * k + beta - x) * laguerre_poly(k, beta, x) -
                           (double(k) + beta - 1.0) * laguerre_poly(k - 1, beta, x);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("normalized Bessel series vs the extended-precision oracle") {
  CHECK(normalized_bessel_J(0.7, 0.0) == 1.0);
  for (double beta : {0.0, 0.5, 1.0, 2.5}) {
    for (double z : {0.01, 0.5, 1.0, 4.0, 20.0}) {
      const double oracle = double(bessel_series_oracle(beta, z));
      CHECK(std::abs(normalized_bessel_J(beta, z) - oracle) <=
            1e-12 * std::max(1.0, std::abs(oracle)) + 1e-15);
    }
  }
  // term-by-term relation to the classical series: J_beta(z) for beta = 1
  // equals Gamma(2) z^{-1/2} J_1(2 sqrt z); compare via the oracle form
  for (double z : {0.2, 1.0, 3.0}) {
    const double lhs = normalized_bessel_J(1.0, z);
    // classical J_1(y) = sum (-1)^n (y/2)^{2n+1} / (n! (n+1)!)
    const double y = 2.0 * std::sqrt(z);
    long double j1 = 0.0L, term = y / 2.0L;
    for (int n = 0; n < 120; ++n) {
      j1 += term;
      term *= -(y * y / 4.0L) / ((n + 1.0L) * (n + 2.0L));
    }
    CHECK(std::abs(lhs - double(j1) / std::sqrt(z)) <= 1e-10);
  }
}

TEST_CASE("modified Bessel I series vs oracle") {
  CHECK(modified_bessel_I(0.0, 0.0) == 1.0);
  CHECK(modified_bessel_I(1.0, 0.0) == 0.0);
  for (double nu : {-0.5, 0.0, 0.5, 2.0}) {
    for (double z : {0.1, 2.0, 10.0, 40.0}) {
      const double oracle = double(modified_bessel_oracle(nu, z));
      CHECK(std::abs(modified_bessel_I(nu, z) - oracle) <= 1e-12 * std::abs(oracle));
    }
  }
}

TEST_CASE("series are stable under doubled max_terms") {
  SeriesTolerance tol;
  SeriesTolerance tol2;
  tol2.max_terms = 1000;
  for (double z : {0.5, 5.0, 25.0}) {
    const double a = normalized_bessel_J(1.5, z, tol);
    const double b = normalized_bessel_J(1.5, z, tol2);
    CHECK(std::abs(a - b) <= tol.rel_tol * std::max(1.0, std::abs(a)));
  }
  SeriesTolerance tiny;
  tiny.max_terms = 3;
  CHECK_THROWS_AS(normalized_bessel_J(1.0, 30.0, tiny), std::runtime_error);
}

TEST_CASE("kummer finite sum") {
  // n=0 collapses to 1
  CHECK(kummer_1f1_neg(0, 2.0, 1.7) == 1.0);
  // explicit three-term sum at n=2, b=2, q=1: 1 - 2/2 + (2*1)/(2*3) * 1/2
  const double want = 1.0 - 1.0 + (2.0 * 1.0) / (2.0 * 3.0) * 0.5;
  CHECK(kummer_1f1_neg(2, 2.0, 1.0) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("regularized incomplete gamma and the chi-square tail") {
  // exponential special case: P(1, x) = 1 - e^{-x}
  for (double x : {0.1, 1.0, 5.0})
    CHECK(reg_gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
  CHECK(reg_gamma_q(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  // chi-square with 2 df is Exp(1/2)
  CHECK(chi2_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(reg_gamma_p(2.5, 1e4) == doctest::Approx(1.0));
}
