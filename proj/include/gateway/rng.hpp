#ifndef GATEWAY_RNG_HPP
#define GATEWAY_RNG_HPP

#include <cstdint>
#include <random>

namespace gateway {

// Reproducible random stream. Distinct (seed, stream_id) pairs give
// independent streams; identical pairs reproduce identical output on every
// platform (mt19937_64 is fully specified; all variate algorithms are local).
// Not thread-safe: one stream per worker.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RngStream derive(std::uint64_t sub_id) const { return RngStream(seed_, mix(stream_id_, sub_id)); }

  std::uint64_t next_u64() { return engine_(); }

  // uniform on (0,1); never returns 0 or 1
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal();                 // standard normal, Marsaglia polar
  double exponential(double rate = 1.0);
  long poisson(double mean);       // inversion for mean < 10, PTRS rejection above
  double gamma(double shape);      // Marsaglia-Tsang; shape < 1 via the boost trick
  double gamma(double shape, double rate) { return gamma(shape) / rate; }
  double beta(double a, double b);
  bool bernoulli(double p) { return uniform() < p; }
  long binomial(long n, double p);
  long geometric(double p);            // #failures before first success, pgf (1-p)/(1-ps)... see impl
  long negative_binomial(double r, double p);  // sum/gamma-Poisson mixture, pmf C(r+n-1,n)p^n(1-p)^r

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace gateway

#endif
