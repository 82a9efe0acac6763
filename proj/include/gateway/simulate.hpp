#ifndef GATEWAY_SIMULATE_HPP
#define GATEWAY_SIMULATE_HPP

#include <string>
#include <vector>

#include "gateway/generators.hpp"
#include "gateway/rng.hpp"
#include "gateway/semigroups.hpp"

namespace gateway {

// Right-continuous jump path: state states[i] holds on [times[i], times[i+1]).
struct PathSample {
  std::vector<double> times;   // strictly increasing, times[0] == 0
  std::vector<long> states;    // one per epoch, consecutive states differ by +-1
  double horizon = 0.0;

  long end_state() const { return states.back(); }
  bool valid() const;
};

enum class SampleMethod { mixture, pipeline, compose, path };

struct SamplerConfig {
  long n_samples = 1;
  RngStream rng{0, 0};
  SampleMethod method = SampleMethod::mixture;
};

// Gillespie path of the birth-death chain with the given generator parameters.
// Rates are generated on demand from the closed-form linear expressions; a
// guard aborts past 10^7 jumps.
PathSample bd_path(GeneratorKind kind, double beta, double sigma, long n0, double horizon,
                   RngStream& rng);

// end state of the bessel birth-death chain after time u, by the branching
// decomposition (Binomial survivors + negative binomial immigration); exact in
// distribution, O(1) in u
long bd_endpoint_branching(double beta, double u, long n0, RngStream& rng);

// Q_t(x, .) draw via the mixture N ~ Pois(x/t), return t * Gamma(N + beta)
double bessel_exact_sample(double beta, double t, double x, RngStream& rng);

// Q_{s+t}(x, .) draw via Pois(x/s) -> bd path for t/s -> s * Gamma(end + beta)
double bessel_pipeline_sample(double beta, double s, double t, double x, RngStream& rng);

// K_t^{(beta,sigma)}(x, .) via the composition Q_{sigma(e^t-1)} then e^{-t} scale
double laguerre_exact_sample(double beta, double sigma, double t, double x, RngStream& rng);

// bbK_t^{(beta,sigma)}(n, .) via bb-endpoint then binomial thinning by e^{-t}.
// use_path selects Gillespie for the bb endpoint (default) or the branching form.
long laguerre_bd_exact_sample(double beta, double sigma, double t, long n, RngStream& rng,
                              bool use_path = true);

// direct Gillespie draw of the Laguerre birth-death chain at time t
long laguerre_bd_path_sample(double beta, double sigma, double t, long n, RngStream& rng);

// K^{(beta,varsigma)}_{ln(1+1/(varsigma sigma)) + t}(x, .) via the factorized route:
// Pois(sigma x) -> Laguerre bb chain (parameter varsigma*sigma) for t -> hat kernel
double laguerre_factorized_sample(double beta, double varsigma, double sigma, double t, double x,
                                  RngStream& rng);

// bbK^{(beta,varsigma sigma)}_{ln(1+1/(varsigma sigma)) + t}(n, .) via the dual
// factorization: hat kernel -> K^{(beta,varsigma)} for t -> Pois(sigma .)
long laguerre_bd_factorized_sample(double beta, double varsigma, double sigma, double t, long n,
                                   RngStream& rng);

struct ApproximationRow {
  double eps = 0.0;
  double value = 0.0;   // composed kernel value at horizon t + eps
  double error = 0.0;   // |value - Q_t f|
};

// Deterministic sweep of the intertwined approximation at f = e_{-lambda}:
// the composed Poisson/bb/gamma kernel at scale eps equals Q_{t+eps} f exactly.
std::vector<ApproximationRow> approximation_sweep(double beta, double t, double x, double lambda,
                                                  const std::vector<double>& eps_list);

// CSV dump, header "index,value"; integers unquoted, reals in full-precision
// scientific notation
void write_samples_csv(const std::string& path, const std::vector<double>& values);
void write_samples_csv(const std::string& path, const std::vector<long>& values);

}  // namespace gateway

#endif
