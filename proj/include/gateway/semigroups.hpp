#ifndef GATEWAY_SEMIGROUPS_HPP
#define GATEWAY_SEMIGROUPS_HPP

#include <functional>
#include <vector>

#include "gateway/generators.hpp"
#include "gateway/kernels.hpp"
#include "gateway/rational.hpp"

namespace gateway {

// Nonnegative weights on {0..N-1} plus a bound on the mass lost to truncation.
struct DiscreteMeasure {
  std::vector<double> weights;
  double tail_mass_bound = 0.0;

  double at(long n) const {
    return (n >= 0 && n < long(weights.size())) ? weights[static_cast<size_t>(n)] : 0.0;
  }
  double total() const;
  double mean() const;
  // weights >= 0 and total + tail within tol of 1
  bool is_probability(double tol = 1e-12) const;
};

struct ContinuousDensity {
  std::function<double(double)> pdf;
  double check_tol = 1e-8;
  // integrates pdf over [0, upper] adaptively and reports |1 - integral|
  double normalization_defect(double upper) const;
};

// Q_t e_{-lambda}(x) = (1 + lambda t)^{-beta} exp(-x lambda/(1+lambda t))
double bessel_laplace(double beta, double t, double lam, double x);

// transition density of the squared-Bessel semi-group, t > 0; x = 0 gives the
// entrance law (y/t)^{beta-1} e^{-y/t} / (t Gamma(beta))
double bessel_transition_density(double beta, double t, double x, double y);

// bb-semi-group pgf: bbQ_t p_s(n), |s| < 1
double bd_pgf(double beta, double t, double s, long n);

// pgf of the thinned family bbQ_u D_v at total scale w = u v:
// (1+w(1-s))^{-beta} ((1+(w-v)(1-s)) / (1+w(1-s)))^n ; v = 1, w = t is bbQ_t.
double bd_thinned_pgf(double beta, double w, double v, double s, long n);

// bbQ_t(n, m) by coefficient extraction from the pgf (compensated convolution)
double bd_transition(double beta, double t, long n, long m);

// row m = 0..m_max of bbQ_u D_v with w = u v; falls back is NOT applied here --
// use bd_row_formula_ok to decide, or laguerre_bdK_row below which handles it.
std::vector<double> bd_thinned_row(double beta, double w, double v, long n, long m_max);
bool bd_row_formula_ok(double beta, double w, double v, long n);
// measured cancellation (sum |term| / |value|) of the worst coefficient
double bd_thinned_row_condition(double beta, double w, double v, long n, long m_max);

// exact-rational value of bbQ_t(n,m) * (1+t)^{beta} (the remaining factor
// (1+t)^{-beta} is irrational for fractional beta and is applied in double)
Rational bd_transition_rational_part(const Rational& beta, const Rational& t, long n, long m);

// bbQ_1(n, m) = 2^{-(m+n+beta)} (m+n+beta-1)...(n+beta)/m!
double q1_discrete_kernel(double beta, long n, long m);

// Row `row` of exp(t G) by uniformization; truncation error of the Poisson
// sum <= eps, tail_mass_bound from the boundary-flux estimate.
DiscreteMeasure matrix_exp_transition(const TridiagGenerator& gen, double t, int row,
                                      double eps = 1e-13);

// exp(t G) applied to an initial distribution (row vector) / to a function
DiscreteMeasure matrix_exp_distribution(const TridiagGenerator& gen, double t,
                                        const std::vector<double>& init, double eps = 1e-13);
std::vector<double> matrix_exp_apply(const TridiagGenerator& gen, double t,
                                     const std::vector<double>& f, double eps = 1e-13);

// invariant measures
DiscreteMeasure m_beta_measure(double beta, int N);                 // infinite mass, truncated
DiscreteMeasure n_sigma_measure(double beta, double sigma, int N);  // NB(beta, sigma/(1+sigma))
DiscreteMeasure n_beta_measure(double beta, int N);                 // n_sigma at sigma = 1
ContinuousDensity mu_beta_density(double beta);
ContinuousDensity nu_sigma_density(double beta, double sigma);

// Laguerre semi-group K_t^{(beta,sigma)} f(x) = integral of f(e^{-t} .) against
// Q_{sigma(e^t-1)}(x, .)
double laguerre_K_apply(double beta, double sigma, double t, const RealFnHandle& f, double x);

// row of the discrete Laguerre semi-group bbK_t^{(beta,sigma)}(n, .) on {0..N-1}
DiscreteMeasure laguerre_bdK_row(double beta, double sigma, double t, long n, int N);

// smallest truncation N with a Chernoff bound on the bbQ_u D_v tail < tol
int suggest_truncation(double beta, double w, double v, long n, double tol);

}  // namespace gateway

#endif
