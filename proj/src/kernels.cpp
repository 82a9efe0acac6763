#include "gateway/kernels.hpp"

#include <cmath>

#include "gateway/quadrature.hpp"
#include "gateway/special.hpp"

namespace gateway {

double lambda_apply(const FiniteSeqD& g, double x) {
  if (!(x >= 0.0)) throw std::domain_error("lambda_apply: x < 0");
  if (x == 0.0) return g.at(0);
  double acc = 0.0, c = 0.0;
  const double lx = std::log(x);
  for (int n = 0; n < g.support_bound(); ++n) {
    if (g.values[static_cast<size_t>(n)] == 0.0) continue;
    const double term = g.values[static_cast<size_t>(n)] * std::exp(-x + n * lx - ln_factorial(n));
    const double y = term - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  }
  return acc;
}

double lambda_apply(const DiscreteFnHandle& g, double x) {
  if (!(x >= 0.0)) throw std::domain_error("lambda_apply: x < 0");
  if (x == 0.0) return g(0);
  // window [klo, khi] holds all but < 1e-15 of the Poisson mass
  const double sd = std::sqrt(x);
  const long klo = std::max(0L, long(std::floor(x - 14.0 * sd - 20.0)));
  const long khi = long(std::ceil(x + 14.0 * sd + 30.0));
  const double lx = std::log(x);
  double acc = 0.0, c = 0.0;
  for (long k = klo; k <= khi; ++k) {
    const double w = std::exp(-x + double(k) * lx - ln_factorial(k));
    const double term = w * g(k);
    const double y = term - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  }
  return acc;
}

long lambda_sample(double x, RngStream& rng) {
  if (!(x >= 0.0)) throw std::domain_error("lambda_sample: x < 0");
  return rng.poisson(x);
}

double lambda_star_apply(const RealFnHandle& f, long n, double beta, double abs_floor) {
  if (n < 0) throw std::domain_error("lambda_star_apply: n < 0");
  if (!(double(n) + beta > 0.0)) throw std::domain_error("lambda_star_apply: n + beta <= 0");
  return gamma_expectation(double(n) + beta - 1.0, f, 1e-12, 32, 1024, abs_floor);
}

double lambda_star_sample(long n, double beta, RngStream& rng) {
  if (!(double(n) + beta > 0.0)) throw std::domain_error("lambda_star_sample: n + beta <= 0");
  return rng.gamma(double(n) + beta);
}

void KernelSpec::validate() const {
  auto need_pos = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("KernelSpec: ") + what + " must be > 0");
  };
  switch (kind) {
    case KernelKind::poisson_lambda:
      break;
    case KernelKind::gamma_lambda_star:
      need_pos(beta, "beta");
      break;
    case KernelKind::lambda_sigma:
      if (!(sigma >= 0.0)) throw std::invalid_argument("KernelSpec: sigma must be >= 0");
      break;
    case KernelKind::tilde_lambda_sigma:
      need_pos(beta, "beta");
      need_pos(sigma, "sigma");
      break;
    case KernelKind::hat_lambda:
      need_pos(beta, "beta");
      need_pos(sigma, "sigma");
      need_pos(varsigma, "varsigma");
      break;
    case KernelKind::binomial_D:
      if (!(sigma >= 0.0)) throw std::invalid_argument("KernelSpec: sigma must be >= 0");
      break;
    case KernelKind::D_star:
      need_pos(beta, "beta");
      if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::invalid_argument("KernelSpec: D_star requires sigma in (0,1]");
      break;
    case KernelKind::beta_binomial_B:
      need_pos(beta, "beta");
      need_pos(alpha, "alpha");
      break;
    case KernelKind::dilation:
      need_pos(sigma, "sigma");
      break;
  }
}

bool KernelSpec::markovian() const {
  if (kind == KernelKind::binomial_D) return sigma >= 0.0 && sigma <= 1.0;
  if (kind == KernelKind::D_star) return false;
  return true;
}

KernelState composite_kernel_sample(const KernelSpec& spec, KernelState input, RngStream& rng) {
  spec.validate();
  if (!spec.markovian())
    throw std::invalid_argument("composite_kernel_sample: kernel is not Markovian");
  auto as_real = [&](const char* who) -> double {
    if (const double* x = std::get_if<double>(&input)) {
      if (!(*x >= 0.0)) throw std::invalid_argument(std::string(who) + ": state < 0");
      return *x;
    }
    throw std::invalid_argument(std::string(who) + ": expects a real state");
  };
  auto as_int = [&](const char* who) -> long {
    if (const long* n = std::get_if<long>(&input)) {
      if (*n < 0) throw std::invalid_argument(std::string(who) + ": state < 0");
      return *n;
    }
    throw std::invalid_argument(std::string(who) + ": expects an integer state");
  };
  switch (spec.kind) {
    case KernelKind::poisson_lambda:
      return rng.poisson(as_real("poisson_lambda"));
    case KernelKind::gamma_lambda_star:
      return rng.gamma(double(as_int("gamma_lambda_star")) + spec.beta);
    case KernelKind::lambda_sigma:
      return rng.poisson(spec.sigma * as_real("lambda_sigma"));
    case KernelKind::tilde_lambda_sigma:
      return rng.gamma(double(as_int("tilde_lambda_sigma")) + spec.beta) / spec.sigma;
    case KernelKind::hat_lambda: {
      const double rate = 1.0 / spec.varsigma + spec.sigma;
      return rng.gamma(double(as_int("hat_lambda")) + spec.beta) / rate;
    }
    case KernelKind::binomial_D:
      return rng.binomial(as_int("binomial_D"), spec.sigma);
    case KernelKind::beta_binomial_B: {
      const double b = rng.beta(spec.beta, spec.alpha);
      return rng.binomial(as_int("beta_binomial_B"), b);
    }
    case KernelKind::dilation:
      return spec.sigma * as_real("dilation");
    case KernelKind::D_star:
      break;
  }
  throw std::invalid_argument("composite_kernel_sample: unsupported kind");
}

namespace {

double binomial_D_apply_impl(double sigma, const std::function<double(long)>& g, long n) {
  if (!(sigma >= 0.0)) throw std::domain_error("binomial_D_apply: sigma < 0");
  if (n < 0) throw std::domain_error("binomial_D_apply: n < 0");
  if (sigma == 1.0 || n == 0) return g(n);
  if (sigma == 0.0) return g(0);
  if (sigma > 1.0 && n > 64)
    throw std::overflow_error("binomial_D_apply: signed regime capped at support 64");
  // weight recurrence in extended precision; the signed regime (sigma > 1)
  // cancels like (sigma + |1-sigma|)^n, so every extra digit counts
  const long double s = (long double)sigma;
  const long double q = 1.0L - s;
  long double w = std::pow(q, (long double)n);  // C(n,m) s^m q^{n-m} at m = 0
  long double acc = 0.0L, comp = 0.0L;
  for (long m = 0; m <= n; ++m) {
    const long double term = w * (long double)g(m);
    const long double y = term - comp;
    const long double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    if (m < n) w *= s * (long double)(n - m) / (q * (long double)(m + 1));
  }
  return double(acc);
}

}  // namespace

double binomial_D_apply(double sigma, const FiniteSeqD& g, long n) {
  return binomial_D_apply_impl(sigma, [&](long m) { return g.at(int(m)); }, n);
}

double binomial_D_apply(double sigma, const DiscreteFnHandle& g, long n) {
  return binomial_D_apply_impl(sigma, g, n);
}

long binomial_D_sample(double sigma, long n, RngStream& rng) {
  if (sigma < 0.0 || sigma > 1.0)
    throw std::domain_error("binomial_D_sample: sigma outside [0,1]");
  return rng.binomial(n, sigma);
}

double D_star_kernel(double sigma, double beta, long m, long n) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw std::domain_error("D_star_kernel: sigma outside (0,1]");
  if (!(beta > 0.0)) throw std::domain_error("D_star_kernel: beta <= 0");
  if (n < m || m < 0) return 0.0;
  // sigma^{-beta} m_beta(m) C(n+beta-1, n-m) (1-sigma)^{n-m} sigma^{m+beta}
  return m_beta_weight(beta, int(m)) * gen_binom(double(n) + beta - 1.0, int(n - m)) *
         std::pow(1.0 - sigma, double(n - m)) * std::pow(sigma, double(m));
}

double beta_binomial_B_apply(double beta, double alpha, const FiniteSeqD& g, long n) {
  if (!(beta > 0.0) || !(alpha > 0.0))
    throw std::domain_error("beta_binomial_B_apply: parameters must be > 0");
  if (n < 0) throw std::domain_error("beta_binomial_B_apply: n < 0");
  const double ln_beta_fn = ln_gamma(beta) + ln_gamma(alpha) - ln_gamma(beta + alpha);
  double acc = 0.0, c = 0.0;
  for (long m = 0; m <= n; ++m) {
    const double v = g.at(int(m));
    if (v == 0.0) continue;
    const double lw = ln_factorial(int(n)) - ln_factorial(int(m)) - ln_factorial(int(n - m)) +
                      ln_gamma(beta + double(m)) + ln_gamma(alpha + double(n - m)) -
                      ln_gamma(beta + alpha + double(n)) - ln_beta_fn;
    const double term = std::exp(lw) * v;
    const double y = term - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  }
  return acc;
}

long beta_binomial_B_sample(double beta, double alpha, long n, RngStream& rng) {
  if (!(beta > 0.0) || !(alpha > 0.0))
    throw std::domain_error("beta_binomial_B_sample: parameters must be > 0");
  const double b = rng.beta(beta, alpha);
  return rng.binomial(n, b);
}

}  // namespace gateway
