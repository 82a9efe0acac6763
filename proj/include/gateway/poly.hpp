#ifndef GATEWAY_POLY_HPP
#define GATEWAY_POLY_HPP

#include <cstddef>
#include <vector>

#include "gateway/rational.hpp"

namespace gateway {

// Polynomial as a coefficient sequence, coeffs[n] multiplying x^n.
// Trailing zeros are trimmed; degree() == coeffs.size() - 1.
template <typename T>
struct PolySeq {
  std::vector<T> coeffs;

  PolySeq() = default;
  explicit PolySeq(std::vector<T> c) : coeffs(std::move(c)) { trim(); }

  static PolySeq monomial(int d, T c = T(1)) {
    PolySeq p;
    p.coeffs.assign(static_cast<size_t>(d) + 1, T(0));
    p.coeffs[static_cast<size_t>(d)] = c;
    return p;
  }

  int degree() const { return int(coeffs.size()) - 1; }  // -1 for the zero polynomial

  T coeff(int n) const {
    return (n >= 0 && n < int(coeffs.size())) ? coeffs[static_cast<size_t>(n)] : T(0);
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == T(0)) coeffs.pop_back();
  }

  T eval(const T& x) const {
    T acc(0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }

  PolySeq derivative() const {
    PolySeq d;
    if (coeffs.size() <= 1) return d;
    d.coeffs.resize(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i)
      d.coeffs[i - 1] = coeffs[i] * scalar_from_int<T>(long(i));
    d.trim();
    return d;
  }

  // multiply by x
  PolySeq shift_up() const {
    PolySeq s;
    if (coeffs.empty()) return s;
    s.coeffs.resize(coeffs.size() + 1);
    s.coeffs[0] = T(0);
    for (size_t i = 0; i < coeffs.size(); ++i) s.coeffs[i + 1] = coeffs[i];
    return s;
  }

  friend PolySeq operator+(const PolySeq& a, const PolySeq& b) {
    PolySeq r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), T(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.trim();
    return r;
  }

  friend PolySeq operator*(const T& s, const PolySeq& p) {
    PolySeq r = p;
    for (auto& c : r.coeffs) c *= s;
    r.trim();
    return r;
  }

  friend bool operator==(const PolySeq& a, const PolySeq& b) { return a.coeffs == b.coeffs; }
};

// Finite-support function on Z_+; values[n] is the value at n, zero beyond.
template <typename T>
struct FiniteSeq {
  std::vector<T> values;

  FiniteSeq() = default;
  explicit FiniteSeq(std::vector<T> v) : values(std::move(v)) {}

  static FiniteSeq indicator(int n) {
    FiniteSeq s;
    s.values.assign(static_cast<size_t>(n) + 1, T(0));
    s.values[static_cast<size_t>(n)] = T(1);
    return s;
  }

  int support_bound() const { return int(values.size()); }

  T at(int n) const {
    return (n >= 0 && n < int(values.size())) ? values[static_cast<size_t>(n)] : T(0);
  }

  void set(int n, T v) {
    if (n >= int(values.size())) values.resize(static_cast<size_t>(n) + 1, T(0));
    values[static_cast<size_t>(n)] = std::move(v);
  }

  void trim() {
    while (!values.empty() && values.back() == T(0)) values.pop_back();
  }

  friend bool operator==(const FiniteSeq& a, const FiniteSeq& b) {
    FiniteSeq x = a, y = b;
    x.trim();
    y.trim();
    return x.values == y.values;
  }
};

using PolySeqD = PolySeq<double>;
using PolySeqQ = PolySeq<Rational>;
using FiniteSeqD = FiniteSeq<double>;
using FiniteSeqQ = FiniteSeq<Rational>;

}  // namespace gateway

#endif
