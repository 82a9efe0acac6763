#include "gateway/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gateway/special.hpp"

namespace gateway {

namespace {

GaussLaguerreRule compute_rule(double alpha, int n) {
  // Golub-Welsch nodes: eigenvalues of the Jacobi matrix of the generalized
  // Laguerre recurrence, a_k = 2k + alpha + 1, b_k = sqrt(k (k + alpha))
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(double(k) * (double(k) + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  GaussLaguerreRule rule;
  rule.nodes.resize(size_t(n));
  rule.weights.resize(size_t(n));
  const double mu0 = std::exp(ln_gamma(alpha + 1.0));  // total weight mass
  // Weights via the Christoffel function: w_i = mu0 / sum_k ptilde_k(x_i)^2
  // over the orthonormal polynomials. Eigenvector first components lose all
  // relative accuracy once a weight drops below ~1e-26; the recurrence sum
  // keeps tiny weights relatively accurate, which matters for high-degree
  // integrands.
  for (int k = 0; k < n; ++k) {
    const long double x = es.eigenvalues()[k];
    long double pm1 = 0.0L, p0 = 1.0L, sum = 1.0L;
    bool overflowed = false;
    for (int j = 0; j + 1 < n; ++j) {
      const long double aj = 2.0L * j + (long double)alpha + 1.0L;
      const long double bj =
          j > 0 ? std::sqrt((long double)j * ((long double)j + (long double)alpha)) : 0.0L;
      const long double bj1 =
          std::sqrt((long double)(j + 1) * ((long double)(j + 1) + (long double)alpha));
      const long double p1 = ((x - aj) * p0 - bj * pm1) / bj1;
      pm1 = p0;
      p0 = p1;
      sum += p1 * p1;
      if (sum > 1e4000L) {
        overflowed = true;  // weight below any representable contribution
        break;
      }
    }
    rule.nodes[size_t(k)] = double(x);
    rule.weights[size_t(k)] = overflowed ? 0.0 : double((long double)mu0 / sum);
  }
  return rule;
}

std::map<std::pair<double, int>, GaussLaguerreRule>& rule_cache() {
  static std::map<std::pair<double, int>, GaussLaguerreRule> cache;
  return cache;
}
std::mutex cache_mutex;

}  // namespace

const GaussLaguerreRule& gauss_laguerre_rule(double alpha, int n) {
  if (!(alpha > -1.0)) throw std::domain_error("gauss_laguerre_rule: alpha <= -1");
  if (n < 1) throw std::domain_error("gauss_laguerre_rule: n < 1");
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(alpha, n);
  auto it = rule_cache().find(key);
  if (it == rule_cache().end()) it = rule_cache().emplace(key, compute_rule(alpha, n)).first;
  return it->second;
}

double gamma_expectation(double alpha, const std::function<double(double)>& f,
                         double rel_tol, int n0, int n_max, double abs_floor) {
  const double norm = std::exp(ln_gamma(alpha + 1.0));
  double prev = 0.0;
  bool have_prev = false;
  double best = 0.0, best_rel = 1e300;
  for (int n = n0; n <= n_max; n *= 2) {
    const GaussLaguerreRule& rule = gauss_laguerre_rule(alpha, n);
    double acc = 0.0, c = 0.0, l1 = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double term = rule.weights[i] * f(rule.nodes[i]);
      l1 += std::abs(term);
      const double y = term - c;
      const double t = acc + y;
      c = (t - acc) - y;
      acc = t;
    }
    acc /= norm;
    l1 /= norm;
    if (have_prev) {
      // the achievable accuracy is bounded by the summation noise eps * l1,
      // so convergence is judged against l1 when the integrand cancels
      const double scale = std::max({1e-300, std::abs(acc), std::abs(prev), l1});
      const double rel = std::abs(acc - prev) / scale;
      if (rel <= rel_tol) return acc;
      if (abs_floor > 0.0 && scale < abs_floor) return acc;
      if (rel < best_rel) {
        best_rel = rel;
        best = acc;
      }
    }
    prev = acc;
    have_prev = true;
  }
  // refinement noise can sit just above rel_tol and grow with the node count;
  // accept the flattest pair when it is close, report otherwise
  if (best_rel <= 100.0 * rel_tol) return best;
  throw std::runtime_error("gamma_expectation: quadrature did not converge");
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace gateway
