#ifndef GATEWAY_KERNELS_HPP
#define GATEWAY_KERNELS_HPP

#include <functional>
#include <stdexcept>
#include <variant>

#include "gateway/poly.hpp"
#include "gateway/rng.hpp"

namespace gateway {

using DiscreteFnHandle = std::function<double(long)>;
using RealFnHandle = std::function<double(double)>;

// Poisson expectation E[g(Pois(x))]; tail truncated below 1e-15 total mass.
double lambda_apply(const FiniteSeqD& g, double x);
double lambda_apply(const DiscreteFnHandle& g, double x);

long lambda_sample(double x, RngStream& rng);

// E[f(Gam(n+beta))], adaptive generalized Gauss-Laguerre (nodes double from 32
// until two refinements agree to 1e-12 relative). abs_floor, when nonzero,
// accepts once the integral magnitude is below it (see gamma_expectation).
double lambda_star_apply(const RealFnHandle& f, long n, double beta, double abs_floor = 0.0);

double lambda_star_sample(long n, double beta, RngStream& rng);

enum class KernelKind {
  poisson_lambda,
  gamma_lambda_star,
  lambda_sigma,
  tilde_lambda_sigma,
  hat_lambda,
  binomial_D,
  D_star,
  beta_binomial_B,
  dilation,
};

// One kernel with its parameters; each parameter is read only where the kind
// requires it. validate() enforces the kind's domain (binomial_D is Markovian
// only for sigma in [0,1]; the signed regime is flagged, not sampled).
struct KernelSpec {
  KernelKind kind = KernelKind::poisson_lambda;
  double beta = 0.0;
  double sigma = 0.0;
  double varsigma = 0.0;
  double alpha = 0.0;

  void validate() const;
  bool markovian() const;
};

using KernelState = std::variant<double, long>;

// Draw from spec.kind given the input state; throws std::invalid_argument on
// an invalid kind/state pairing or a non-Markovian spec.
KernelState composite_kernel_sample(const KernelSpec& spec, KernelState input, RngStream& rng);

// D_sigma g(n) = sum_m C(n,m) sigma^m (1-sigma)^{n-m} g(m), compensated.
// Signed regime (sigma > 1) only on supports <= 64 (magnitudes grow ~sigma^n).
double binomial_D_apply(double sigma, const FiniteSeqD& g, long n);
double binomial_D_apply(double sigma, const DiscreteFnHandle& g, long n);

long binomial_D_sample(double sigma, long n, RngStream& rng);

// Adjoint of the thinning kernel under the m_beta weights:
// sigma^{-beta} C(m+beta-1,m) NB_{m+beta,1-sigma}(n-m); zero for n < m.
// Carries the m_beta(m) weight itself (it equals m_beta(n) D_sigma(n,m)).
double D_star_kernel(double sigma, double beta, long m, long n);

// Beta-binomial mixture kernel and its two-stage sampler.
double beta_binomial_B_apply(double beta, double alpha, const FiniteSeqD& g, long n);
long beta_binomial_B_sample(double beta, double alpha, long n, RngStream& rng);

inline double dilation_apply(double sigma, const RealFnHandle& f, double x) { return f(sigma * x); }

}  // namespace gateway

#endif
