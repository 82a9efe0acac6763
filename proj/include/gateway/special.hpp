#ifndef GATEWAY_SPECIAL_HPP
#define GATEWAY_SPECIAL_HPP

#include <cstddef>
#include <stdexcept>

namespace gateway {

/// Truncation control for the series evaluators. A series stops once the
/// next term's magnitude stays below rel_tol * |partial sum| for two
/// consecutive terms.
struct SeriesTolerance {
  double rel_tol = 1e-14;
  int max_terms = 500;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::domain_error("SeriesTolerance: rel_tol must be > 0");
    if (max_terms < 1) throw std::domain_error("SeriesTolerance: max_terms must be >= 1");
  }
};

// Natural log of the gamma function, x > 0. Relative error <= 1e-13.
double ln_gamma(double x);

// Generalized binomial coefficient a(a-1)...(a-n+1)/n!, total in a.
double gen_binom(double a, int n);

// m_beta(n) = (n+beta-1)...(beta)/n! = gen_binom(n+beta-1, n).
double m_beta_weight(double beta, int n);

// Laguerre polynomial with the convention fixed by the eigen-equation
// x*L'' + (beta - x)*L' = -k*L:  L_k(x) = sum_r (-1)^r C(k+beta-1,k-r) x^r/r!.
// Explicit compensated sum for k <= 10, three-term recurrence above.
double laguerre_poly(int k, double beta, double x);

// Normalized Bessel function J_beta(z) = Gamma(1+beta) sum (-z)^n/(n! Gamma(n+1+beta)),
// J_beta(0) = 1. Kahan-compensated (alternating terms).
double normalized_bessel_J(double beta, double z, const SeriesTolerance& tol = {});

// Modified Bessel function of the first kind I_nu(z), nu > -1, z >= 0,
// ascending series.
double modified_bessel_I(double nu, double z, const SeriesTolerance& tol = {});

// Kummer 1F1(-n; b; q) as the finite (n+1)-term sum, compensated.
double kummer_1f1_neg(int n, double b, double q);

// Regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_sf(double stat, int df);

// log of n!
double ln_factorial(long n);

}  // namespace gateway

#endif
