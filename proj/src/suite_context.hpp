// internal header shared by the suite implementation files
#ifndef GATEWAY_SUITE_CONTEXT_HPP
#define GATEWAY_SUITE_CONTEXT_HPP

#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "gateway/report.hpp"
#include "gateway/rng.hpp"
#include "gateway/special.hpp"
#include "gateway/suites.hpp"

namespace gateway::detail {

// identity labels carried by report checks as their paper_ref strings
inline constexpr const char* kTagPoissonKernel = "kernel:poisson";
inline constexpr const char* kTagGammaStarKernel = "kernel:gamma-star";
inline constexpr const char* kTagThinningKernel = "kernel:thinning";
inline constexpr const char* kTagThinningAdjoint = "kernel:thinning-adjoint";
inline constexpr const char* kTagBetaBinomialKernel = "kernel:beta-binomial";
inline constexpr const char* kTagDilation = "kernel:dilation";
inline constexpr const char* kTagPoissonScaled = "kernel:poisson-scaled";
inline constexpr const char* kTagGammaRate = "kernel:gamma-rate";
inline constexpr const char* kTagGammaHat = "kernel:gamma-hat";
inline constexpr const char* kTagBesselGen = "generator:bessel-diffusion";
inline constexpr const char* kTagBirthDeathGen = "generator:birth-death";
inline constexpr const char* kTagLaguerreGen = "generator:laguerre";
inline constexpr const char* kTagLaguerreBdGen = "generator:laguerre-bd";
inline constexpr const char* kTagDriftGen = "generator:drift";
inline constexpr const char* kTagDeathGen = "generator:death";
inline constexpr const char* kTagDerivativeLift = "transform:derivative-lift";
inline constexpr const char* kTagGeneratorGateway = "identity:generator-gateway";
inline constexpr const char* kTagLiftBijection = "identity:lift-bijection";
inline constexpr const char* kTagGammaAdjoint = "identity:gamma-adjoint";
inline constexpr const char* kTagSemigroupGateway = "identity:semigroup-gateway";
inline constexpr const char* kTagDilationCommutation = "identity:dilation-commutation";
inline constexpr const char* kTagDiscreteSelfSimilarity = "identity:discrete-self-similarity";
inline constexpr const char* kTagTimeInversion = "identity:time-inversion";
inline constexpr const char* kTagBetaBinomialIntertwining = "identity:beta-binomial-intertwining";
inline constexpr const char* kTagBetaGammaDiscrete = "identity:beta-gamma-discrete";
inline constexpr const char* kTagJensenBessel = "identity:jensen-bessel";
inline constexpr const char* kTagProductPG = "identity:product-PG";
inline constexpr const char* kTagProductGP = "identity:product-GP";
inline constexpr const char* kTagProductScaledPG = "identity:product-scaled-PG";
inline constexpr const char* kTagProductScaledGP = "identity:product-scaled-GP";
inline constexpr const char* kTagScaledGateway = "identity:scaled-gateway";
inline constexpr const char* kTagLaguerreSemigroupGateway = "identity:laguerre-semigroup-gateway";
inline constexpr const char* kTagLaguerreGeneratorGateway = "identity:laguerre-generator-gateway";
inline constexpr const char* kTagAdjointKernelsLink = "identity:adjoint-kernels-link";
inline constexpr const char* kTagLaguerreProducts = "identity:laguerre-products";
inline constexpr const char* kTagEntropyDecay = "identity:entropy-decay";
inline constexpr const char* kTagSpectralExpansion = "identity:spectral-expansion";
inline constexpr const char* kTagSpectralGap = "identity:spectral-gap";
inline constexpr const char* kTagEigenfunctionLift = "identity:eigenfunction-lift";
inline constexpr const char* kTagIsospectral = "identity:isospectral";
inline constexpr const char* kTagThinningSemigroup = "identity:thinning-semigroup";
inline constexpr const char* kTagDeathGenerator = "identity:death-generator";
inline constexpr const char* kTagExactSimulation = "method:exact-simulation";
inline constexpr const char* kTagIntertwinedApproximation = "method:intertwined-approximation";
inline constexpr const char* kTagBesselInvariantPair = "measure:bessel-invariant-pair";
inline constexpr const char* kTagLaguerreInvariantPair = "measure:laguerre-invariant-pair";
inline constexpr const char* kTagLaplacePgfClosedForm = "closed-form:laplace-pgf";

class SuiteContext {
 public:
  SuiteContext(const SuiteParams& params, std::uint64_t seed, std::uint64_t suite_index)
      : params(params), seed_(seed), suite_index_(suite_index) {}

  const SuiteParams& params;
  std::vector<CheckResult> checks;

  void det(const std::string& name, const char* tag, double statistic, double tol) {
    add(name, tag, CheckKind::deterministic, statistic, tol * params.tol_scale,
        statistic <= tol * params.tol_scale);
  }
  // check whose pass condition is supplied directly (e.g. a detected
  // discrepancy or an interval test); statistic records the evidence
  void det_flag(const std::string& name, const char* tag, double statistic, double threshold,
                bool pass) {
    add(name, tag, CheckKind::deterministic, statistic, threshold, pass);
  }
  void stat_p(const std::string& name, const char* tag, double p_value, double alpha = 0.01) {
    add(name, tag, CheckKind::statistical, p_value, alpha, p_value >= alpha);
  }
  void stat_bound(const std::string& name, const char* tag, double statistic, double bound) {
    add(name, tag, CheckKind::statistical, statistic, bound, statistic <= bound);
  }

  // one derived stream per call; depends only on (seed, suite, call order)
  RngStream stream() { return RngStream(seed_, suite_index_ * 1000 + counter_++); }

  std::vector<double> betas(std::initializer_list<double> defaults) const {
    if (params.beta > 0.0) return {params.beta};
    return std::vector<double>(defaults);
  }
  std::vector<double> sigmas(std::initializer_list<double> defaults) const {
    if (params.sigma > 0.0) return {params.sigma};
    return std::vector<double>(defaults);
  }
  std::vector<double> varsigmas(std::initializer_list<double> defaults) const {
    if (params.varsigma > 0.0) return {params.varsigma};
    return std::vector<double>(defaults);
  }
  long n_samples() const { return params.n_samples; }
  std::vector<double> t_grid(std::initializer_list<double> defaults) const {
    if (!params.t_grid.empty()) return params.t_grid;
    return std::vector<double>(defaults);
  }

 private:
  void add(const std::string& name, const char* tag, CheckKind kind, double statistic,
           double threshold, bool pass) {
    checks.push_back(CheckResult{name, kind, statistic, threshold, pass, tag});
  }

  std::uint64_t seed_;
  std::uint64_t suite_index_;
  std::uint64_t counter_ = 0;
};

inline double pois_pmf(long m, double x) {
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(-x + double(m) * std::log(x) - ln_factorial(int(m)));
}

inline const std::vector<double>& s_grid() {
  static const std::vector<double> g = {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9};
  return g;
}

// suites, split across two translation units
void suite_gateway_bessel(SuiteContext& ctx);
void suite_gateway_generators(SuiteContext& ctx);
void suite_self_similarity(SuiteContext& ctx);
void suite_time_inversion(SuiteContext& ctx);
void suite_beta_gamma(SuiteContext& ctx);
void suite_product_kernels(SuiteContext& ctx);
void suite_laguerre_gateway(SuiteContext& ctx);
void suite_laguerre_products(SuiteContext& ctx);
void suite_spectral(SuiteContext& ctx);
void suite_variance_gap(SuiteContext& ctx);
void suite_entropy(SuiteContext& ctx);
void suite_jensen(SuiteContext& ctx);
void suite_dilation_semigroup(SuiteContext& ctx);
void suite_samplers(SuiteContext& ctx);
void suite_approximation(SuiteContext& ctx);

}  // namespace gateway::detail

#endif
