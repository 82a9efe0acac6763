#include "gateway/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "gateway/special.hpp"

namespace gateway {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  return splitmix64(s);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t s = mix(seed, mix(stream_id, 0x6a09e667f3bcc909ULL));
  std::seed_seq seq{std::uint32_t(s), std::uint32_t(s >> 32), std::uint32_t(seed),
                    std::uint32_t(seed >> 32), std::uint32_t(stream_id),
                    std::uint32_t(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  for (;;) {
    const double u = double(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0 && u < 1.0) return u;
  }
}

double RngStream::normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  have_spare_normal_ = true;
  return u * f;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential: rate <= 0");
  return -std::log(uniform()) / rate;
}

long RngStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("poisson: mean < 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    // multiplicative inversion
    const double limit = std::exp(-mean);
    long k = 0;
    double p = uniform();
    while (p > limit) {
      p *= uniform();
      ++k;
    }
    return k;
  }
  // PTRS transformed rejection (Hormann)
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = uniform() - 0.5;
    double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return long(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const long k = long(kf);
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mean - mean - ln_factorial(k))
      return k;
  }
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) {
    if (shape == 0.0) return 0.0;  // degenerate Gamma(0) = delta_0
    throw std::domain_error("gamma: shape < 0");
  }
  if (shape < 1.0) {
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta: parameters must be > 0");
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

long RngStream::binomial(long n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::domain_error("binomial: bad parameters");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);
  if (n <= 30) {
    long k = 0;
    for (long i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
    return k;
  }
  // inversion with pmf ratio; expected cost O(np), callers keep np moderate
  const double q = 1.0 - p;
  const double ratio = p / q;
  double pmf = std::exp(double(n) * std::log1p(-p));
  double cdf = pmf;
  const double u = uniform();
  long k = 0;
  while (u > cdf && k < n) {
    pmf *= ratio * double(n - k) / double(k + 1);
    ++k;
    cdf += pmf;
  }
  return k;
}

long RngStream::geometric(double p) {
  // number of failures before the first success; pmf (1-p) p^k
  if (p <= 0.0) return 0;
  if (!(p < 1.0)) throw std::domain_error("geometric: p >= 1");
  return long(std::floor(std::log(uniform()) / std::log(p)));
}

long RngStream::negative_binomial(double r, double p) {
  // pmf C(r+n-1,n) p^n (1-p)^r via the gamma-Poisson mixture
  if (r == 0.0) return 0;
  if (!(r > 0.0) || p < 0.0 || p >= 1.0)
    throw std::domain_error("negative_binomial: bad parameters");
  if (p == 0.0) return 0;
  return poisson(gamma(r) * p / (1.0 - p));
}

}  // namespace gateway
