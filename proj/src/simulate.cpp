#include "gateway/simulate.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gateway {

bool PathSample::valid() const {
  if (times.size() != states.size() || times.empty()) return false;
  if (times.front() != 0.0) return false;
  for (size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) return false;
    if (std::labs(states[i] - states[i - 1]) != 1) return false;
  }
  return times.back() <= horizon;
}

PathSample bd_path(GeneratorKind kind, double beta, double sigma, long n0, double horizon,
                   RngStream& rng) {
  if (!(horizon >= 0.0) || n0 < 0) throw std::domain_error("bd_path: bad arguments");
  if (kind == GeneratorKind::laguerre_bd && !(sigma > 0.0))
    throw std::domain_error("bd_path: laguerre_bd requires sigma > 0");
  PathSample path;
  path.horizon = horizon;
  path.times.push_back(0.0);
  path.states.push_back(n0);
  double t = 0.0;
  long n = n0;
  long jumps = 0;
  for (;;) {
    const double birth = kind == GeneratorKind::bessel_bd ? double(n) + beta : sigma * (double(n) + beta);
    const double death = kind == GeneratorKind::bessel_bd ? double(n) : (sigma + 1.0) * double(n);
    const double rate = birth + death;
    if (rate <= 0.0) break;  // absorbing (beta = 0 at state 0)
    t += rng.exponential(rate);
    if (t > horizon) break;
    n += rng.uniform() * rate < birth ? 1 : -1;
    path.times.push_back(t);
    path.states.push_back(n);
    if (++jumps > 10000000L)
      throw std::runtime_error("bd_path: jump guard exceeded (pathological parameters)");
  }
  return path;
}

long bd_endpoint_branching(double beta, double u, long n0, RngStream& rng) {
  if (!(u >= 0.0) || n0 < 0) throw std::domain_error("bd_endpoint_branching: bad arguments");
  if (u == 0.0) return n0;
  const double p = u / (1.0 + u);
  const long survivors = rng.binomial(n0, 1.0 - p);
  const double shape = double(survivors) + beta;
  if (shape == 0.0) return survivors;
  return survivors + rng.negative_binomial(shape, p);
}

double bessel_exact_sample(double beta, double t, double x, RngStream& rng) {
  if (!(t > 0.0) || !(x >= 0.0) || !(beta >= 0.0))
    throw std::domain_error("bessel_exact_sample: bad arguments");
  const long n = rng.poisson(x / t);
  const double shape = double(n) + beta;
  if (shape == 0.0) return 0.0;  // beta = 0 absorption
  return t * rng.gamma(shape);
}

double bessel_pipeline_sample(double beta, double s, double t, double x, RngStream& rng) {
  if (!(s > 0.0) || !(t >= 0.0) || !(x >= 0.0))
    throw std::domain_error("bessel_pipeline_sample: bad arguments");
  const long n = rng.poisson(x / s);
  long end = n;
  if (t > 0.0) {
    PathSample path = bd_path(GeneratorKind::bessel_bd, beta, 0.0, n, t / s, rng);
    end = path.end_state();
  }
  const double shape = double(end) + beta;
  if (shape == 0.0) return 0.0;
  return s * rng.gamma(shape);
}

double laguerre_exact_sample(double beta, double sigma, double t, double x, RngStream& rng) {
  if (!(beta > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || !(x >= 0.0))
    throw std::domain_error("laguerre_exact_sample: bad arguments");
  const double u = sigma * std::expm1(t);
  if (u == 0.0) return x;
  return std::exp(-t) * bessel_exact_sample(beta, u, x, rng);
}

long laguerre_bd_exact_sample(double beta, double sigma, double t, long n, RngStream& rng,
                              bool use_path) {
  if (!(beta > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || n < 0)
    throw std::domain_error("laguerre_bd_exact_sample: bad arguments");
  const double u = sigma * std::expm1(t);
  if (u == 0.0) return n;
  long end;
  if (use_path && u <= 64.0) {
    end = bd_path(GeneratorKind::bessel_bd, beta, 0.0, n, u, rng).end_state();
  } else {
    end = bd_endpoint_branching(beta, u, n, rng);
  }
  return rng.binomial(end, std::exp(-t));
}

long laguerre_bd_path_sample(double beta, double sigma, double t, long n, RngStream& rng) {
  return bd_path(GeneratorKind::laguerre_bd, beta, sigma, n, t, rng).end_state();
}

double laguerre_factorized_sample(double beta, double varsigma, double sigma, double t, double x,
                                  RngStream& rng) {
  if (!(beta > 0.0) || !(varsigma > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || !(x >= 0.0))
    throw std::domain_error("laguerre_factorized_sample: bad arguments");
  const long n = rng.poisson(sigma * x);
  const long m = t > 0.0 ? laguerre_bd_path_sample(beta, varsigma * sigma, t, n, rng) : n;
  const double rate = 1.0 / varsigma + sigma;
  return rng.gamma(double(m) + beta) / rate;
}

long laguerre_bd_factorized_sample(double beta, double varsigma, double sigma, double t, long n,
                                   RngStream& rng) {
  if (!(beta > 0.0) || !(varsigma > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || n < 0)
    throw std::domain_error("laguerre_bd_factorized_sample: bad arguments");
  const double rate = 1.0 / varsigma + sigma;
  const double x = rng.gamma(double(n) + beta) / rate;
  const double xt = t > 0.0 ? laguerre_exact_sample(beta, varsigma, t, x, rng) : x;
  return rng.poisson(sigma * xt);
}

std::vector<ApproximationRow> approximation_sweep(double beta, double t, double x, double lambda,
                                                  const std::vector<double>& eps_list) {
  if (!(t > 0.0) || !(x >= 0.0) || !(lambda >= 0.0))
    throw std::domain_error("approximation_sweep: bad arguments");
  std::vector<ApproximationRow> rows;
  rows.reserve(eps_list.size());
  const double target = bessel_laplace(beta, t, lambda, x);
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::domain_error("approximation_sweep: eps <= 0");
    if (lambda == 0.0) {
      rows.push_back({eps, 1.0, 0.0});
      continue;
    }
    // tilde kernel at scale 1/eps maps e_{-lambda} to n -> c^beta p_s(n),
    // with c = 1/(1+eps*lambda); then the bb pgf and the Poisson kernel close
    // the composition in closed form.
    const double c = 1.0 / (1.0 + eps * lambda);
    DiscreteFnHandle mid = [&](long n) {
      return std::pow(c, beta) * bd_pgf(beta, t / eps, c, n);
    };
    ApproximationRow row;
    row.eps = eps;
    row.value = lambda_apply(mid, x / eps);
    row.error = std::abs(row.value - target);
    rows.push_back(row);
  }
  return rows;
}

namespace {

FILE* open_or_throw(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

void write_samples_csv(const std::string& path, const std::vector<double>& values) {
  FILE* f = open_or_throw(path);
  std::fputs("index,value\n", f);
  for (size_t i = 0; i < values.size(); ++i)
    std::fprintf(f, "%zu,%.17e\n", i, values[i]);
  std::fclose(f);
}

void write_samples_csv(const std::string& path, const std::vector<long>& values) {
  FILE* f = open_or_throw(path);
  std::fputs("index,value\n", f);
  for (size_t i = 0; i < values.size(); ++i)
    std::fprintf(f, "%zu,%ld\n", i, values[i]);
  std::fclose(f);
}

}  // namespace gateway
