#ifndef GATEWAY_GENERATORS_HPP
#define GATEWAY_GENERATORS_HPP

#include <stdexcept>
#include <vector>

#include "gateway/poly.hpp"

namespace gateway {

// Guard entries appended past deg(P) by nabla; images of degree-d polynomials
// under the generators have support <= d+1, so this covers every identity test.
inline constexpr int kNablaGuard = 8;

// nabla(P)(n) = d^n/dx^n [e^x P(x)] at 0 = sum_k C(n,k) k! a_k,
// P treated as a plain polynomial test function.
template <typename T>
FiniteSeq<T> nabla(const PolySeq<T>& p, int guard = kNablaGuard) {
  const int deg = p.degree();
  const int len = (deg < 0 ? 0 : deg) + 1 + guard;
  FiniteSeq<T> out;
  out.values.assign(static_cast<size_t>(len), T(0));
  for (int n = 0; n < len; ++n) {
    T acc(0);
    const int kmax = deg < n ? deg : n;
    for (int k = 0; k <= kmax; ++k)
      acc += binom_t<T>(n, k) * factorial_t<T>(k) * p.coeffs[static_cast<size_t>(k)];
    out.values[static_cast<size_t>(n)] = acc;
  }
  return out;
}

// Polynomial part of the Poisson-kernel image of g: P(x) = sum g(n) x^n / n!.
template <typename T>
PolySeq<T> lambda_inverse(const FiniteSeq<T>& g) {
  PolySeq<T> p;
  p.coeffs.resize(g.values.size());
  for (size_t n = 0; n < g.values.size(); ++n)
    p.coeffs[n] = g.values[n] / factorial_t<T>(int(n));
  p.trim();
  return p;
}

// nabla acting on the function P(x) e^{-x}: the e^x factor cancels and the
// result is (n! a_n)_n. Exact inverse of lambda_inverse.
template <typename T>
FiniteSeq<T> nabla_pe(const PolySeq<T>& p) {
  FiniteSeq<T> out;
  out.values.resize(p.coeffs.size());
  for (size_t n = 0; n < p.coeffs.size(); ++n)
    out.values[n] = p.coeffs[n] * factorial_t<T>(int(n));
  out.trim();
  return out;
}

// G_beta P = x P'' + beta P'
template <typename T>
PolySeq<T> G_beta_poly(const T& beta, const PolySeq<T>& p) {
  const PolySeq<T> d1 = p.derivative();
  const PolySeq<T> d2 = d1.derivative();
  return d2.shift_up() + beta * d1;
}

// bbG_beta g(n) = (n+beta) g(n+1) - (2n+beta) g(n) + n g(n-1)
template <typename T>
FiniteSeq<T> bbG_apply(const T& beta, const FiniteSeq<T>& g) {
  const int len = g.support_bound() + 1;
  FiniteSeq<T> out;
  out.values.assign(static_cast<size_t>(len), T(0));
  for (int n = 0; n < len; ++n) {
    const T nn = scalar_from_int<T>(n);
    T v = (nn + beta) * g.at(n + 1) - (scalar_from_int<T>(2 * n) + beta) * g.at(n);
    if (n > 0) v += nn * g.at(n - 1);
    out.values[static_cast<size_t>(n)] = v;
  }
  out.trim();
  return out;
}

// the two-parameter family bbG_{beta,alpha}; Markovian only at alpha = 1
template <typename T>
FiniteSeq<T> bbG_alpha_apply(const T& beta, const T& alpha, const FiniteSeq<T>& g) {
  const int len = g.support_bound() + 1;
  FiniteSeq<T> out;
  out.values.assign(static_cast<size_t>(len), T(0));
  for (int n = 0; n < len; ++n) {
    const T nn = scalar_from_int<T>(n);
    T v = (nn + beta) * g.at(n + 1) -
          (scalar_from_int<T>(2) * alpha * nn + beta * alpha) * g.at(n);
    if (n > 0) v += alpha * alpha * nn * g.at(n - 1);
    out.values[static_cast<size_t>(n)] = v;
  }
  out.trim();
  return out;
}

// D P = -x P'
template <typename T>
PolySeq<T> D_poly(const PolySeq<T>& p) {
  return scalar_from_int<T>(-1) * p.derivative().shift_up();
}

// bbD g(n) = n (g(n-1) - g(n)); support unchanged
template <typename T>
FiniteSeq<T> bbD_apply(const FiniteSeq<T>& g) {
  FiniteSeq<T> out;
  out.values.assign(g.values.size(), T(0));
  for (int n = 1; n < g.support_bound(); ++n)
    out.values[static_cast<size_t>(n)] = scalar_from_int<T>(n) * (g.at(n - 1) - g.at(n));
  // one past the support: n (g(n-1) - 0)
  const int n = g.support_bound();
  if (n > 0 && g.at(n - 1) != T(0)) out.set(n, scalar_from_int<T>(n) * g.at(n - 1));
  out.trim();
  return out;
}

// L_{beta,sigma} P = sigma x P'' + (sigma beta - x) P', the direct
// differential form (equals sigma G_beta P + D P; the decomposition is a
// tested identity, not the implementation)
template <typename T>
PolySeq<T> laguerre_generator_poly(const T& beta, const T& sigma, const PolySeq<T>& p) {
  const PolySeq<T> d1 = p.derivative();
  const PolySeq<T> d2 = d1.derivative();
  return sigma * d2.shift_up() + (sigma * beta) * d1 + scalar_from_int<T>(-1) * d1.shift_up();
}

// bbL_{beta,sigma} g = sigma bbG_beta g + bbD g
template <typename T>
FiniteSeq<T> bbL_apply(const T& beta, const T& sigma, const FiniteSeq<T>& g) {
  FiniteSeq<T> a = bbG_apply(beta, g);
  FiniteSeq<T> b = bbD_apply(g);
  const int len = std::max(a.support_bound(), b.support_bound());
  FiniteSeq<T> out;
  out.values.assign(static_cast<size_t>(len), T(0));
  for (int n = 0; n < len; ++n) out.values[static_cast<size_t>(n)] = sigma * a.at(n) + b.at(n);
  out.trim();
  return out;
}

enum class GeneratorKind { bessel_bd, laguerre_bd };

// Truncated birth-death generator. Interior rows are conservative; the last
// row's birth term is folded into the diagonal ("reflecting") unless
// absorbing_tail is set, in which case it is dropped and the row is defective.
struct TridiagGenerator {
  GeneratorKind kind = GeneratorKind::bessel_bd;
  double beta = 0.0;
  double sigma = 0.0;  // unused for bessel_bd
  int size = 0;
  bool absorbing_tail = false;

  struct Row {
    double sub = 0.0;   // rate to m-1
    double diag = 0.0;
    double super = 0.0;  // rate to m+1
  };
  std::vector<Row> rows;

  double birth_rate(int m) const {
    return kind == GeneratorKind::bessel_bd ? (m + beta) : sigma * (m + beta);
  }
  double death_rate(int m) const {
    return kind == GeneratorKind::bessel_bd ? double(m) : (sigma + 1.0) * m;
  }
};

TridiagGenerator build_generator(GeneratorKind kind, double beta, double sigma, int size,
                                 bool absorbing_tail = false);

// matrix-vector action of the truncated generator on a coefficient vector
// (function side): (G f)(m) = sub*f(m-1) + diag*f(m) + super*f(m+1)
std::vector<double> tridiag_apply(const TridiagGenerator& gen, const std::vector<double>& f);

}  // namespace gateway

#endif
