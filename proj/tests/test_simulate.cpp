#include "gateway/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "gateway/special.hpp"
#include "gateway/stats.hpp"

using namespace gateway;

TEST_CASE("bd_path invariants and reproducibility") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const PathSample p = bd_path(GeneratorKind::bessel_bd, 1.3, 0.0, rep % 4, 1.5, rng);
    CHECK(p.valid());
  }
  RngStream a(5, 9), b(5, 9);
  const PathSample pa = bd_path(GeneratorKind::laguerre_bd, 1.0, 2.0, 3, 2.0, a);
  const PathSample pb = bd_path(GeneratorKind::laguerre_bd, 1.0, 2.0, 3, 2.0, b);
  CHECK(pa.times == pb.times);
  CHECK(pa.states == pb.states);

  // beta = 0: the origin is absorbing
  RngStream c(6, 0);
  const PathSample abs0 = bd_path(GeneratorKind::bessel_bd, 0.0, 0.0, 0, 10.0, c);
  CHECK(abs0.states.size() == 1);
  CHECK(abs0.end_state() == 0);
}

TEST_CASE("bd_path endpoint matches the explicit transition row") {
  RngStream rng(22, 0);
  const long n = 60000;
  std::vector<long> ends(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    ends[static_cast<size_t>(i)] = bd_path(GeneratorKind::bessel_bd, 1.0, 0.0, 0, 1.0, rng).end_state();
  DiscreteMeasure pmf;
  pmf.weights.resize(64);
  for (long m = 0; m < 64; ++m) pmf.weights[static_cast<size_t>(m)] = q1_discrete_kernel(1.0, 0, m);
  McTest cfg;
  cfg.n_samples = n;
  CHECK(chi_square_pmf_test(ends, pmf, cfg).p_value > 0.005);
}

TEST_CASE("branching endpoint equals the Gillespie endpoint in law") {
  RngStream r1(23, 0), r2(23, 1);
  const long n = 60000;
  std::vector<long> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)] = bd_endpoint_branching(0.8, 1.6, 3, r1);
    b[static_cast<size_t>(i)] = bd_path(GeneratorKind::bessel_bd, 0.8, 0.0, 3, 1.6, r2).end_state();
  }
  CHECK(two_sample_chi_test(a, b).p_value > 0.005);
  // the n = 0 row is the negative binomial of the closed form
  RngStream r3(23, 2);
  std::vector<long> zero_row(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) zero_row[static_cast<size_t>(i)] = bd_endpoint_branching(1.0, 1.0, 0, r3);
  DiscreteMeasure pmf;
  pmf.weights.resize(64);
  for (long m = 0; m < 64; ++m) pmf.weights[static_cast<size_t>(m)] = q1_discrete_kernel(1.0, 0, m);
  McTest cfg;
  cfg.n_samples = n;
  CHECK(chi_square_pmf_test(zero_row, pmf, cfg).p_value > 0.005);
}

TEST_CASE("jump guard trips on pathological rates") {
  RngStream rng(99, 0);
  CHECK_THROWS_AS(bd_path(GeneratorKind::bessel_bd, 5e6, 0.0, 0, 5.0, rng),
                  std::runtime_error);
}

TEST_CASE("mixture sampler: entrance law and moments") {
  RngStream rng(24, 0);
  const long n = 50000;
  // x = 0, t = 1: Gamma(beta)
  const double beta = 1.7;
  std::vector<double> draws(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) draws[static_cast<size_t>(i)] = bessel_exact_sample(beta, 1.0, 0.0, rng);
  CHECK(ks_test(draws, [&](double y) { return y <= 0 ? 0.0 : reg_gamma_p(beta, y); }).p_value >
        0.005);

  // mean x + beta t
  const double t = 2.0, x = 3.0;
  double mean = 0.0;
  for (long i = 0; i < n; ++i) mean += bessel_exact_sample(beta, t, x, rng);
  mean /= double(n);
  CHECK(std::abs(mean - (x + beta * t)) < 0.1);

  CHECK(bessel_exact_sample(0.0, 1.0, 0.0, rng) == 0.0);
}

TEST_CASE("pipeline sampler agrees with the mixture sampler") {
  RngStream r1(25, 0), r2(25, 1);
  const long n = 60000;
  const double beta = 1.0, x = 2.0;
  std::vector<double> pipe(static_cast<size_t>(n)), mix(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    pipe[static_cast<size_t>(i)] = bessel_pipeline_sample(beta, 1.0, 1.0, x, r1);
    mix[static_cast<size_t>(i)] = bessel_exact_sample(beta, 2.0, x, r2);
  }
  CHECK(two_sample_ks_test(pipe, mix).p_value > 0.005);
  // t = 0 reduces to the mixture with the same horizon
  RngStream r3(25, 2), r4(25, 2);
  for (int i = 0; i < 50; ++i)
    CHECK(bessel_pipeline_sample(beta, 0.7, 0.0, x, r3) ==
          doctest::Approx(bessel_exact_sample(beta, 0.7, x, r4)));
}

TEST_CASE("laguerre samplers: fixed point at t=0 and ergodic limit") {
  RngStream rng(26, 0);
  CHECK(laguerre_exact_sample(1.0, 2.0, 0.0, 1.5, rng) == 1.5);
  CHECK(laguerre_bd_exact_sample(1.0, 2.0, 0.0, 4, rng) == 4);

  const long n = 50000;
  const double beta = 1.0, sigma = 2.0;
  std::vector<double> draws(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    draws[static_cast<size_t>(i)] = laguerre_exact_sample(beta, sigma, 25.0, 5.0, rng);
  CHECK(ks_test(draws, [&](double y) { return y <= 0 ? 0.0 : reg_gamma_p(beta, y / sigma); })
            .p_value > 0.005);

  // discrete chain approaches NB(beta, sigma/(1+sigma))
  std::vector<long> ends(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    ends[static_cast<size_t>(i)] = laguerre_bd_exact_sample(beta, sigma, 22.0, 3, rng);
  const DiscreteMeasure ns = n_sigma_measure(beta, sigma, 200);
  McTest cfg;
  cfg.n_samples = n;
  CHECK(chi_square_pmf_test(ends, ns, cfg).p_value > 0.005);

  // direct Gillespie route agrees with the composition route
  std::vector<long> gill(static_cast<size_t>(n));
  RngStream r2(26, 7);
  for (long i = 0; i < n; ++i)
    gill[static_cast<size_t>(i)] = laguerre_bd_path_sample(beta, sigma, 1.1, 3, r2);
  std::vector<long> comp(static_cast<size_t>(n));
  RngStream r3(26, 8);
  for (long i = 0; i < n; ++i)
    comp[static_cast<size_t>(i)] = laguerre_bd_exact_sample(beta, sigma, 1.1, 3, r3);
  CHECK(two_sample_chi_test(gill, comp).p_value > 0.005);
}

TEST_CASE("approximation sweep: exact identity and first-order error") {
  const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125};
  const auto rows = approximation_sweep(1.0, 1.0, 3.0, 1.0, eps);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(std::abs(row.value - bessel_laplace(1.0, 1.0 + row.eps, 1.0, 3.0)) <= 1e-12);
    CHECK(row.error == doctest::Approx(std::abs(row.value - bessel_laplace(1.0, 1.0, 1.0, 3.0)))
                           .epsilon(1e-12));
  }
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i + 1].error / rows[i].error;
    CHECK(ratio > 0.375);
    CHECK(ratio < 0.625);
  }
}

TEST_CASE("csv dumps") {
  const std::string path = "test_dump.csv";
  write_samples_csv(path, std::vector<long>{3, 1, 4});
  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,value");
    std::getline(in, line);
    CHECK(line == "0,3");
  }
  write_samples_csv(path, std::vector<double>{0.5});
  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "0,5.00000000000000000e-01");
  }
  std::remove(path.c_str());
}
