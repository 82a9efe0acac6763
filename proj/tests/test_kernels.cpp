#include "gateway/kernels.hpp"

#include <cmath>

#include "doctest.h"
#include "gateway/quadrature.hpp"
#include "gateway/special.hpp"

using namespace gateway;

TEST_CASE("lambda_apply") {
  FiniteSeqD g;
  g.set(0, 2.0);
  g.set(3, -1.0);
  CHECK(lambda_apply(g, 0.0) == 2.0);
  // single term of the series: indicator at 2, x = 1 -> e^{-1}/2
  CHECK(lambda_apply(FiniteSeqD::indicator(2), 1.0) ==
        doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-14));
  // geometric test function: p_s image is e^{-(1-s)x}
  for (double s : {-0.8, 0.2, 0.5}) {
    for (double x : {0.0, 1.0, 7.0, 300.0}) {
      const double got =
          lambda_apply(DiscreteFnHandle([&](long n) { return std::pow(s, double(n)); }), x);
      CHECK(got == doctest::Approx(std::exp(-(1.0 - s) * x)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(lambda_apply(g, -1.0), std::domain_error);
}

TEST_CASE("lambda_star_apply: Markov property, mean, kummer image") {
  for (double beta : {0.5, 1.0, 2.0}) {
    for (long n : {0L, 2L, 9L}) {
      CHECK(lambda_star_apply([](double) { return 1.0; }, n, beta) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lambda_star_apply([](double x) { return x; }, n, beta) ==
            doctest::Approx(double(n) + beta).epsilon(1e-12));
    }
  }
  // gamma image of the dilated Bessel function with the shifted shape:
  // quadrature with shape n+beta+1 equals e^{-q} 1F1(-n; 1+beta; q)
  const double beta = 1.0, q = 1.0;
  for (long n : {0L, 1L, 4L}) {
    const double got = gamma_expectation(
        double(n) + beta, [&](double x) { return normalized_bessel_J(beta, q * x); });
    const double want = std::exp(-q) * kummer_1f1_neg(int(n), 1.0 + beta, q);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("binomial thinning operator") {
  FiniteSeqD g;
  for (int n = 0; n < 10; ++n) g.set(n, std::sin(1.0 + n));
  for (long n : {0L, 4L, 9L}) {
    CHECK(binomial_D_apply(1.0, g, n) == doctest::Approx(g.at(int(n))));
    CHECK(binomial_D_apply(0.0, g, n) == doctest::Approx(g.at(0)));
  }
  // binomial theorem: D_sigma p_s(n) = (1 - sigma + sigma s)^n; the signed
  // regime cancels like (sigma + |1-sigma|)^n, hence the scaled tolerance
  for (double sigma : {0.4, 1.0, 2.5}) {
    for (double s : {-0.7, 0.3}) {
      for (long n : {0L, 3L, 11L}) {
        const double got = binomial_D_apply(
            sigma, DiscreteFnHandle([&](long m) { return std::pow(s, double(m)); }), n);
        const double want = std::pow(1.0 - sigma + sigma * s, double(n));
        const double cond = std::pow(sigma + std::abs(1.0 - sigma), double(n));
        CHECK(std::abs(got - want) <= 1e-12 * std::max(std::abs(want), 1e-6 * cond) + 1e-15);
      }
    }
  }
  CHECK_THROWS_AS(binomial_D_apply(2.0, DiscreteFnHandle([](long) { return 1.0; }), 80),
                  std::overflow_error);
  RngStream rng(9, 0);
  CHECK_THROWS_AS(binomial_D_sample(1.5, 3, rng), std::domain_error);
  CHECK(binomial_D_sample(1.0, 5, rng) == 5);
  CHECK(binomial_D_sample(0.0, 5, rng) == 0);
}

TEST_CASE("adjoint thinning kernel values") {
  // beta = 1, m = 0: geometric row (1-sigma)^n
  for (double sigma : {0.3, 0.8}) {
    for (long nn : {0L, 1L, 5L}) {
      CHECK(D_star_kernel(sigma, 1.0, 0, nn) ==
            doctest::Approx(std::pow(1.0 - sigma, double(nn))).epsilon(1e-13));
    }
    CHECK(D_star_kernel(sigma, 1.0, 4, 2) == 0.0);
  }
  // row total sigma^{-beta} C(m+beta-1, m)
  const double sigma = 0.5, beta = 1.5;
  for (long m : {0L, 3L}) {
    double acc = 0.0;
    for (long nn = m; nn < m + 200; ++nn) acc += D_star_kernel(sigma, beta, m, nn);
    const double want = std::pow(sigma, -beta) * m_beta_weight(beta, int(m));
    CHECK(acc == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("beta binomial kernel") {
  FiniteSeqD g;
  g.set(0, 0.3);
  g.set(1, 1.0);
  const double beta = 1.2, alpha = 0.8;
  CHECK(beta_binomial_B_apply(beta, alpha, g, 0) == doctest::Approx(0.3));
  // n=1 indicator mass at 1 weights by E[B] = beta/(alpha+beta)
  CHECK(beta_binomial_B_apply(beta, alpha, FiniteSeqD::indicator(1), 1) ==
        doctest::Approx(beta / (alpha + beta)).epsilon(1e-13));
  FiniteSeqD ones;
  for (int n = 0; n < 51; ++n) ones.set(n, 1.0);
  for (long n : {0L, 17L, 50L})
    CHECK(beta_binomial_B_apply(beta, alpha, ones, n) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("kernel spec validation and composite sampling") {
  KernelSpec spec;
  spec.kind = KernelKind::binomial_D;
  spec.sigma = 0.5;
  CHECK(spec.markovian());
  spec.sigma = 1.5;
  CHECK(!spec.markovian());

  RngStream rng(8, 0);
  KernelSpec pois;
  pois.kind = KernelKind::poisson_lambda;
  CHECK(std::get<long>(composite_kernel_sample(pois, KernelState(0.0), rng)) == 0);
  CHECK_THROWS_AS(composite_kernel_sample(pois, KernelState(3L), rng), std::invalid_argument);

  KernelSpec gam;
  gam.kind = KernelKind::gamma_lambda_star;
  gam.beta = 1.0;
  CHECK(std::get<double>(composite_kernel_sample(gam, KernelState(2L), rng)) > 0.0);
  CHECK_THROWS_AS(composite_kernel_sample(gam, KernelState(1.5), rng), std::invalid_argument);

  KernelSpec dil;
  dil.kind = KernelKind::dilation;
  dil.sigma = 3.0;
  CHECK(std::get<double>(composite_kernel_sample(dil, KernelState(2.0), rng)) == 6.0);

  KernelSpec dstar;
  dstar.kind = KernelKind::D_star;
  dstar.beta = 1.0;
  dstar.sigma = 0.5;
  CHECK_THROWS_AS(composite_kernel_sample(dstar, KernelState(1L), rng), std::invalid_argument);

  // tilde kernel mean (n+beta)/sigma; hat kernel mean (n+beta)/(1/vs + sigma)
  KernelSpec tilde;
  tilde.kind = KernelKind::tilde_lambda_sigma;
  tilde.beta = 2.0;
  tilde.sigma = 4.0;
  double mean = 0.0;
  const long n = 200000;
  for (long i = 0; i < n; ++i)
    mean += std::get<double>(composite_kernel_sample(tilde, KernelState(3L), rng));
  mean /= double(n);
  CHECK(std::abs(mean - 5.0 / 4.0) < 0.01);

  KernelSpec hat;
  hat.kind = KernelKind::hat_lambda;
  hat.beta = 1.0;
  hat.sigma = 1.0;
  hat.varsigma = 1.0;
  mean = 0.0;
  for (long i = 0; i < n; ++i)
    mean += std::get<double>(composite_kernel_sample(hat, KernelState(0L), rng));
  mean /= double(n);
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("dilation composes multiplicatively") {
  auto f = [](double x) { return std::cos(x); };
  for (double a : {0.5, 2.0})
    for (double b : {0.3, 1.7})
      for (double x : {0.0, 1.3})
        CHECK(dilation_apply(a, [&](double y) { return dilation_apply(b, f, y); }, x) ==
              doctest::Approx(dilation_apply(a * b, f, x)));
}
