#include <cmath>

#include "doctest.h"
#include "gateway/rng.hpp"
#include "gateway/special.hpp"
#include "gateway/stats.hpp"

using namespace gateway;

TEST_CASE("streams reproduce and decorrelate") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool identical = true, differs_id = false, differs_seed = false;
  for (int i = 0; i < 256; ++i) {
    const std::uint64_t va = a.next_u64();
    identical = identical && va == b.next_u64();
    differs_id = differs_id || va != c.next_u64();
    differs_seed = differs_seed || va != d.next_u64();
  }
  CHECK(identical);
  CHECK(differs_id);
  CHECK(differs_seed);

  RngStream base(42, 3);
  RngStream e1 = base.derive(5), e2 = base.derive(5), e3 = base.derive(6);
  CHECK(e1.next_u64() == e2.next_u64());
  CHECK(e1.next_u64() != e3.next_u64());
}

TEST_CASE("poisson sampler moments, both regimes") {
  RngStream rng(1, 0);
  for (double mean : {0.0, 3.0, 40.0}) {
    const long n = 200000;
    double m1 = 0.0, m2 = 0.0;
    for (long i = 0; i < n; ++i) {
      const double v = double(rng.poisson(mean));
      m1 += v;
      m2 += v * v;
    }
    m1 /= double(n);
    m2 = m2 / double(n) - m1 * m1;
    if (mean == 0.0) {
      CHECK(m1 == 0.0);
      continue;
    }
    const double se_mean = std::sqrt(mean / double(n));
    CHECK(std::abs(m1 - mean) <= 4.5 * se_mean);
    CHECK(std::abs(m2 - mean) <= 0.05 * mean);
  }
}

TEST_CASE("gamma sampler against the incomplete-gamma cdf") {
  RngStream rng(2, 0);
  for (double shape : {0.4, 1.0, 3.7, 25.0}) {
    const long n = 50000;
    std::vector<double> draws(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) draws[static_cast<size_t>(i)] = rng.gamma(shape);
    const TestResult tr =
        ks_test(draws, [&](double y) { return y <= 0.0 ? 0.0 : reg_gamma_p(shape, y); });
    CHECK(tr.p_value > 0.001);
  }
  // exponential tail at shape 1: P(X > 1) = e^{-1}
  RngStream r2(3, 0);
  long over = 0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) over += r2.gamma(1.0) > 1.0 ? 1 : 0;
  CHECK(std::abs(double(over) / double(n) - std::exp(-1.0)) < 0.006);
}

TEST_CASE("binomial and negative binomial samplers") {
  RngStream rng(4, 0);
  CHECK(rng.binomial(7, 0.0) == 0);
  CHECK(rng.binomial(7, 1.0) == 7);
  const long n = 100000;
  double mean = 0.0;
  for (long i = 0; i < n; ++i) mean += double(rng.binomial(100, 0.3));
  mean /= double(n);
  CHECK(std::abs(mean - 30.0) < 4.5 * std::sqrt(100 * 0.3 * 0.7 / double(n)));

  // NB(r, p) has mean r p/(1-p)
  double nb_mean = 0.0;
  const double r = 2.5, p = 1.0 / 3.0;
  for (long i = 0; i < n; ++i) nb_mean += double(rng.negative_binomial(r, p));
  nb_mean /= double(n);
  CHECK(std::abs(nb_mean - r * p / (1.0 - p)) < 0.03);
}

TEST_CASE("beta sampler against a numerically integrated cdf") {
  RngStream rng(11, 0);
  const double a = 1.5, b = 0.8;
  const long n = 30000;
  std::vector<double> draws(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) draws[static_cast<size_t>(i)] = rng.beta(a, b);
  // cumulative beta density on a fine grid, sin^2 substitution at the edges
  const int cells = 4000;
  std::vector<double> F(static_cast<size_t>(cells) + 1, 0.0);
  const double lb = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
  auto g = [&](double th) {
    const double sn = std::sin(th), cs = std::cos(th);
    return 2.0 * std::exp((2.0 * a - 1.0) * std::log(std::max(sn, 1e-300)) +
                          (2.0 * b - 1.0) * std::log(std::max(cs, 1e-300)) - lb);
  };
  const double h = (M_PI / 2.0) / cells;
  for (int i = 0; i < cells; ++i)
    F[static_cast<size_t>(i) + 1] =
        F[static_cast<size_t>(i)] +
        h / 6.0 * (g(i * h) + 4.0 * g((i + 0.5) * h) + g((i + 1) * h));
  auto cdf = [&](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double th = std::asin(std::sqrt(x));
    const double pos = th / h;
    const size_t lo = std::min(static_cast<size_t>(pos), static_cast<size_t>(cells - 1));
    const double w = pos - double(lo);
    return F[lo] + w * (F[lo + 1] - F[lo]);
  };
  CHECK(ks_test(draws, cdf).p_value > 0.005);
}

TEST_CASE("chi-square test: self-consistency, power, degenerate binning") {
  RngStream rng(5, 0);
  DiscreteMeasure pmf;
  pmf.weights.resize(40);
  double w = std::pow(2.0, -1.0);  // NB(1, 1/2) = geometric(1/2)
  for (int k = 0; k < 40; ++k) {
    pmf.weights[static_cast<size_t>(k)] = w;
    w *= 0.5;
  }
  const long n = 100000;
  std::vector<long> good(static_cast<size_t>(n)), bad(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    good[static_cast<size_t>(i)] = rng.negative_binomial(1.0, 0.5);
    bad[static_cast<size_t>(i)] = rng.negative_binomial(1.0, 0.6);
  }
  McTest cfg;
  cfg.n_samples = n;
  CHECK(chi_square_pmf_test(good, pmf, cfg).p_value > 0.01);
  CHECK(chi_square_pmf_test(bad, pmf, cfg).p_value < 1e-6);

  DiscreteMeasure point;
  point.weights = {1.0};
  std::vector<long> zeros(static_cast<size_t>(2000), 0);
  CHECK_THROWS_AS(chi_square_pmf_test(zeros, point, cfg), std::domain_error);
}

TEST_CASE("ks test: self-consistency, power, preconditions") {
  RngStream rng(6, 0);
  const long n = 20000;
  std::vector<double> unif(static_cast<size_t>(n)), expo(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    unif[static_cast<size_t>(i)] = rng.uniform();
    expo[static_cast<size_t>(i)] = rng.exponential();
  }
  CHECK(ks_test(unif, [](double y) { return std::min(1.0, std::max(0.0, y)); }).p_value > 0.01);
  CHECK(ks_test(expo, [](double y) { return y <= 0 ? 0.0 : reg_gamma_p(2.0, y); }).p_value <
        1e-6);
  std::vector<double> few(100, 0.5);
  CHECK_THROWS_AS(ks_test(few, [](double y) { return y; }), std::domain_error);
  CHECK_THROWS_AS(ks_test(unif, [](double y) { return -y; }), std::domain_error);
}

TEST_CASE("two-sample tests") {
  RngStream rng(7, 0);
  const long n = 30000;
  std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n)), c(static_cast<size_t>(n));
  std::vector<long> ia(static_cast<size_t>(n)), ib(static_cast<size_t>(n)), ic(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)] = rng.gamma(2.0);
    b[static_cast<size_t>(i)] = rng.gamma(2.0);
    c[static_cast<size_t>(i)] = rng.gamma(2.2);
    ia[static_cast<size_t>(i)] = rng.poisson(4.0);
    ib[static_cast<size_t>(i)] = rng.poisson(4.0);
    ic[static_cast<size_t>(i)] = rng.poisson(4.6);
  }
  CHECK(two_sample_ks_test(a, b).p_value > 0.01);
  CHECK(two_sample_ks_test(a, c).p_value < 1e-4);
  CHECK(two_sample_chi_test(ia, ib).p_value > 0.01);
  CHECK(two_sample_chi_test(ia, ic).p_value < 1e-6);
}
