#ifndef GATEWAY_RATIONAL_HPP
#define GATEWAY_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace gateway {

// Exact scalar for the generator-level identity checks. mpq_class(double) is
// exact (binary expansion), so doubles round-trip losslessly into this type.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// mpq_class(num, den) does not reduce; comparisons need canonical form
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

template <typename T>
T scalar_from_int(long n) {
  return T(n);
}

template <typename T>
T scalar_abs(const T& x) {
  return x < T(0) ? T(-x) : x;
}

// n! as T
template <typename T>
T factorial_t(int n) {
  T r(1);
  for (int i = 2; i <= n; ++i) r *= scalar_from_int<T>(i);
  return r;
}

// C(n,k) for integer n,k >= 0 as T
template <typename T>
T binom_t(int n, int k) {
  if (k < 0 || k > n) return T(0);
  T r(1);
  for (int i = 0; i < k; ++i) {
    r *= scalar_from_int<T>(n - i);
    r /= scalar_from_int<T>(i + 1);
  }
  return r;
}

// generalized binomial a(a-1)...(a-n+1)/n! for scalar a
template <typename T>
T gen_binom_t(const T& a, int n) {
  T r(1);
  for (int i = 0; i < n; ++i) {
    r *= (a - scalar_from_int<T>(i));
    r /= scalar_from_int<T>(i + 1);
  }
  return r;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

}  // namespace gateway

#endif
