#ifndef GATEWAY_SPECTRAL_HPP
#define GATEWAY_SPECTRAL_HPP

#include <string>
#include <vector>

#include "gateway/kernels.hpp"
#include "gateway/poly.hpp"
#include "gateway/semigroups.hpp"

namespace gateway {

// Coefficients of the continuous Laguerre eigenfunction in the convention
// fixed by the eigen-equation (see laguerre_poly).
template <typename T>
PolySeq<T> laguerre_poly_coeffs(int k, const T& beta) {
  PolySeq<T> p;
  p.coeffs.assign(static_cast<size_t>(k) + 1, T(0));
  for (int r = 0; r <= k; ++r) {
    T c = gen_binom_t<T>(scalar_from_int<T>(k) + beta - T(1), k - r) / factorial_t<T>(r);
    if (r & 1) c = -c;
    p.coeffs[static_cast<size_t>(r)] = c;
  }
  p.trim();
  return p;
}

// Discrete Laguerre eigenfunction: the rate-2 gamma image of L_k,
// sum_r (-1)^r C(k+beta-1,k-r) (n+beta)_r / (r! 2^r). Evaluated in exact
// rational arithmetic (the alternating sum cancels catastrophically in double
// for moderate k, n) and rounded once at the end.
double discrete_laguerre(int k, double beta, long n);

// max over the grid of |L_{beta,1} L_k + k L_k| / (1 + |L_k|), double arithmetic
double eigen_check_continuous(double beta, int k, const std::vector<double>& x_grid);

// max over n <= n_max of the scaled residual of the discrete eigen-relation
double eigen_check_discrete(double beta, int k, long n_max);

enum class BasisKind { continuous_laguerre, discrete_laguerre };

struct SpectralExpansion {
  BasisKind basis_kind = BasisKind::discrete_laguerre;
  double beta = 1.0;
  int truncation = 1;
  std::vector<double> coeffs;  // <g, phi_k> / <phi_k, phi_k>
  std::vector<double> norms;   // <phi_k, phi_k>
  bool ill_conditioned = false;
};

SpectralExpansion spectral_expand_discrete(double beta, const FiniteSeqD& g, int K);
SpectralExpansion spectral_expand_continuous(double beta, const RealFnHandle& f, int K);

// sum_k e^{-kt} c_k phi_k(point); point is a state index for the discrete basis
double spectral_evaluate(const SpectralExpansion& exp, double t, double point);

// <phi_k, phi_k> under nu_beta (quadrature) or n_beta (summation)
double laguerre_norm(double beta, int k, BasisKind kind);
// closed form Gamma(k+beta)/(k! Gamma(beta)), the continuous norm; the discrete
// norm is 2^{-k} times this
double laguerre_norm_closed_form(double beta, int k);

// truncation point where the n_beta tail drops below tol
int n_beta_tail_cutoff(double beta, double tol = 1e-14);

// truncation point safe for summing n_beta against degree-poly_degree
// eigenfunction products
int n_beta_weighted_cutoff(double beta, int poly_degree, double tol = 1e-17);

struct VarianceDecayRow {
  double t = 0.0;
  double lhs = 0.0;  // var(bbK_t g)
  double rhs = 0.0;  // e^{-t} var(g)
};
std::vector<VarianceDecayRow> variance_decay_check(double beta, const FiniteSeqD& g,
                                                   const std::vector<double>& t_grid);

// Ent(m | ref) with the 0 ln 0 = 0 convention; throws on an absolute-continuity
// violation (m puts mass where ref vanishes or is truncated).
double entropy(const DiscreteMeasure& m, const DiscreteMeasure& ref);

struct EntropyDecayRow {
  double t = 0.0;
  double ent = 0.0;
  double bound = 0.0;  // exp(-2 [t - ln(1+1/sigma)]_+) Ent(m0 | n_sigma)
};
std::vector<EntropyDecayRow> entropy_decay_experiment(double beta, double sigma,
                                                      const DiscreteMeasure& m0,
                                                      const std::vector<double>& t_grid, int N);

struct JensenReport {
  double max_err_shifted_shape = 0.0;  // gamma shape n + beta + 1
  double max_err_unshifted_shape = 0.0;  // gamma shape n + beta
  double max_err_generating = 0.0;     // Poisson-kernel image vs J_beta(q x)
  std::string validated_shape;         // which shape convention passed
};
JensenReport jensen_identity_check(double beta, double q, long n_max);

// largest K eigenvalues (descending) of the symmetrized truncated bb Laguerre
// generator at sigma = 1; expected {0, -1, -2, ...}
std::vector<double> isospectral_eigenvalues(double beta, int N, int K);

}  // namespace gateway

#endif
