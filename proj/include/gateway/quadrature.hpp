#ifndef GATEWAY_QUADRATURE_HPP
#define GATEWAY_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace gateway {

// Nodes/weights of the n-point generalized Gauss-Laguerre rule for the weight
// x^alpha e^{-x} on (0, inf), normalized so the weights sum to Gamma(alpha+1).
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are cached per (alpha, n); cache access is guarded by a mutex.
const GaussLaguerreRule& gauss_laguerre_rule(double alpha, int n);

// integral of f against the NORMALIZED gamma density x^alpha e^{-x}/Gamma(alpha+1),
// doubling nodes from n0 until two refinements agree to rel_tol; throws on
// non-convergence. A nonzero abs_floor accepts any value once the integral
// magnitude sits below it (for compositions whose inner values go subnormal-
// irrelevant, e.g. high-shape tails of a Poisson window).
double gamma_expectation(double alpha, const std::function<double(double)>& f,
                         double rel_tol = 1e-12, int n0 = 32, int n_max = 1024,
                         double abs_floor = 0.0);

// adaptive Simpson on [a, b]
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 50);

}  // namespace gateway

#endif
