#include "gateway/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "gateway/generators.hpp"
#include "gateway/kernels.hpp"
#include "gateway/quadrature.hpp"
#include "gateway/semigroups.hpp"
#include "gateway/spectral.hpp"
#include "suite_context.hpp"

namespace gateway {

std::map<std::string, double> SuiteParams::as_map() const {
  std::map<std::string, double> m;
  if (beta > 0.0) m["beta"] = beta;
  if (sigma > 0.0) m["sigma"] = sigma;
  if (varsigma > 0.0) m["varsigma"] = varsigma;
  m["tol_scale"] = tol_scale;
  m["n_samples"] = double(n_samples);
  if (!t_grid.empty()) m["t_points"] = double(t_grid.size());
  return m;
}

namespace {

using detail::SuiteContext;

struct SuiteEntry {
  const char* name;
  void (*fn)(SuiteContext&);
};

const SuiteEntry kSuites[] = {
    {"gateway_generators", detail::suite_gateway_generators},
    {"gateway_bessel", detail::suite_gateway_bessel},
    {"self_similarity", detail::suite_self_similarity},
    {"time_inversion", detail::suite_time_inversion},
    {"beta_gamma", detail::suite_beta_gamma},
    {"product_kernels", detail::suite_product_kernels},
    {"laguerre_gateway", detail::suite_laguerre_gateway},
    {"laguerre_products", detail::suite_laguerre_products},
    {"spectral", detail::suite_spectral},
    {"variance_gap", detail::suite_variance_gap},
    {"entropy", detail::suite_entropy},
    {"jensen", detail::suite_jensen},
    {"dilation_semigroup", detail::suite_dilation_semigroup},
    {"samplers", detail::suite_samplers},
    {"approximation", detail::suite_approximation},
};

constexpr size_t kSuiteCount = sizeof(kSuites) / sizeof(kSuites[0]);

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& in_scope_tags() {
  using namespace detail;
  static const std::vector<std::string> tags = {
      kTagPoissonKernel,        kTagGammaStarKernel,
      kTagThinningKernel,       kTagThinningAdjoint,
      kTagBetaBinomialKernel,   kTagDilation,
      kTagPoissonScaled,        kTagGammaRate,
      kTagGammaHat,             kTagBesselGen,
      kTagBirthDeathGen,        kTagLaguerreGen,
      kTagLaguerreBdGen,        kTagDriftGen,
      kTagDeathGen,             kTagDerivativeLift,
      kTagGeneratorGateway,     kTagLiftBijection,
      kTagGammaAdjoint,         kTagSemigroupGateway,
      kTagDilationCommutation,  kTagDiscreteSelfSimilarity,
      kTagTimeInversion,        kTagBetaBinomialIntertwining,
      kTagBetaGammaDiscrete,    kTagJensenBessel,
      kTagProductPG,            kTagProductGP,
      kTagProductScaledPG,      kTagProductScaledGP,
      kTagScaledGateway,        kTagLaguerreSemigroupGateway,
      kTagLaguerreGeneratorGateway, kTagAdjointKernelsLink,
      kTagLaguerreProducts,     kTagEntropyDecay,
      kTagSpectralExpansion,    kTagSpectralGap,
      kTagEigenfunctionLift,    kTagIsospectral,
      kTagThinningSemigroup,    kTagDeathGenerator,
      kTagExactSimulation,      kTagIntertwinedApproximation,
      kTagBesselInvariantPair,  kTagLaguerreInvariantPair,
      kTagLaplacePgfClosedForm};
  return tags;
}

bool is_suite(const std::string& name) {
  for (const auto& s : kSuites)
    if (name == s.name) return true;
  return false;
}

VerificationReport run_suite(const std::string& name, const SuiteParams& params,
                             std::uint64_t seed) {
  for (size_t i = 0; i < kSuiteCount; ++i) {
    if (name != kSuites[i].name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteContext ctx(params, seed, i);
    kSuites[i].fn(ctx);
    VerificationReport report;
    report.suite = name;
    report.params = params.as_map();
    report.seed = seed;
    report.checks = std::move(ctx.checks);
    report.runtime_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count());
    return report;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<VerificationReport> run_all(const SuiteParams& params, std::uint64_t seed, int jobs) {
  std::vector<VerificationReport> reports(kSuiteCount);
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, int(kSuiteCount));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= kSuiteCount) return;
      reports[i] = run_suite(kSuites[i].name, params, seed);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return reports;
}

bool registry_covers_all_tags(const std::vector<VerificationReport>& reports,
                              std::vector<std::string>* missing) {
  bool ok = true;
  for (const std::string& tag : in_scope_tags()) {
    bool found = false;
    for (const auto& r : reports) {
      for (const auto& c : r.checks)
        if (c.paper_ref == tag) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) {
      ok = false;
      if (missing) missing->push_back(tag);
    }
  }
  return ok;
}

}  // namespace gateway
