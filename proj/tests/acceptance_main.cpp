// Acceptance suite: one line per criterion, exit 0 iff all pass.
// argv[1] must point at the gateway CLI binary (used by the end-to-end check).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gateway/report.hpp"
#include "gateway/suites.hpp"

namespace {

struct Criterion {
  std::string id;
  std::string description;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

int failures = 0;

const gateway::CheckResult* find_check(const gateway::VerificationReport& r,
                                       const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// a named deterministic check must exist, pass, and be pinned at most at `tol`
bool require_check(const gateway::VerificationReport& r, const std::string& name, double tol,
                   std::string& detail) {
  const gateway::CheckResult* c = find_check(r, name);
  if (!c) {
    detail += " missing:" + name;
    return false;
  }
  if (tol > 0.0 && c->threshold > tol * 1.0000001) {
    detail += " tolerance-drift:" + name;
    return false;
  }
  if (!c->pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, " FAILED:%s stat=%.3g thr=%.3g", name.c_str(), c->statistic,
                  c->threshold);
    detail += buf;
    return false;
  }
  return true;
}

bool require_prefix_all_pass(const gateway::VerificationReport& r, const std::string& prefix,
                             std::string& detail) {
  bool ok = true;
  int count = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++count;
    if (!c.pass) {
      detail += " FAILED:" + c.name;
      ok = false;
    }
  }
  if (count == 0) {
    detail += " missing-prefix:" + prefix;
    ok = false;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string gateway_bin = argc > 1 ? argv[1] : "";
  const std::uint64_t seed = 42;
  gateway::SuiteParams params;  // defaults: full grids, 1e5 samples

  std::vector<Criterion> criteria;

  criteria.push_back({"C1", "generator gateway exact on monomials", 1.0, [&](std::string& d) {
    const auto r = gateway::run_suite("gateway_generators", params, seed);
    bool ok = require_check(r, "bessel_generator_gateway_exact", 0.0, d);
    const auto* c = find_check(r, "bessel_generator_gateway_exact");
    if (c && c->statistic != 0.0) {
      d += " nonzero-residual";
      ok = false;
    }
    return ok;
  }});

  criteria.push_back({"C2", "Laguerre generator gateway exact", 1.0, [&](std::string& d) {
    const auto r = gateway::run_suite("gateway_generators", params, seed);
    bool ok = require_check(r, "laguerre_generator_gateway_exact", 0.0, d);
    ok = require_check(r, "drift_generator_gateway_exact", 0.0, d) && ok;
    return ok;
  }});

  criteria.push_back({"C3", "semi-group gateway via closed forms <= 1e-12", 1.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("gateway_bessel", params, seed);
    return require_check(r, "semigroup_gateway_pgf_vs_laplace", 1e-12, d);
  }});

  criteria.push_back({"C4", "discrete self-similarity and time inversion <= 1e-12", 1.0,
                      [&](std::string& d) {
    const auto r1 = gateway::run_suite("self_similarity", params, seed);
    const auto r2 = gateway::run_suite("time_inversion", params, seed);
    bool ok = require_check(r1, "discrete_self_similarity_pgf", 1e-12, d);
    ok = require_check(r2, "time_inversion_pgf_formula", 1e-12, d) && ok;
    ok = require_check(r2, "time_inversion_summable_route", 1e-12, d) && ok;
    return ok;
  }});

  criteria.push_back({"C5", "kernel products (explicit, pgf, uniformization, scaled)", 10.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("product_kernels", params, seed);
    bool ok = require_check(r, "gamma_poisson_product_quadrature", 1e-10, d);
    ok = require_check(r, "q1_kernel_vs_pgf_extraction", 1e-10, d) && ok;
    ok = require_check(r, "q1_kernel_vs_uniformization", 1e-10, d) && ok;
    ok = require_check(r, "poisson_gamma_product_laplace", 1e-8, d) && ok;
    ok = require_check(r, "scaled_product_bessel_laplace", 1e-10, d) && ok;
    ok = require_check(r, "scaled_product_bb_pgf", 1e-10, d) && ok;
    return ok;
  }});

  criteria.push_back({"C6", "discrete beta-gamma algebra", 30.0, [&](std::string& d) {
    const auto r = gateway::run_suite("beta_gamma", params, seed);
    bool ok = require_check(r, "beta_thinned_nb_equals_nb", 1e-8, d);
    ok = require_prefix_all_pass(r, "beta_gamma_two_sample_chi", d) && ok;
    return ok;
  }});

  criteria.push_back({"C7", "exact Bessel samplers (KS, two-route, Laplace 3SE)", 60.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("samplers", params, seed);
    bool ok = require_prefix_all_pass(r, "mixture_ks", d);
    ok = require_prefix_all_pass(r, "pipeline_ks", d) && ok;
    ok = require_prefix_all_pass(r, "two_route_ks", d) && ok;
    ok = require_prefix_all_pass(r, "laplace_within_3se", d) && ok;
    return ok;
  }});

  criteria.push_back({"C8", "Laguerre product/time identity and samplers", 60.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("laguerre_products", params, seed);
    bool ok = require_check(r, "poisson_hat_product_is_laguerre", 1e-8, d);
    ok = require_check(r, "hat_poisson_product_is_bb_laguerre", 1e-8, d) && ok;
    ok = require_prefix_all_pass(r, "laguerre_sampler_two_routes", d) && ok;
    ok = require_check(r, "bb_laguerre_sampler_two_routes", 0.0, d) && ok;
    return ok;
  }});

  criteria.push_back({"C9", "spectral: eigen, orthogonality, expansion, isospectral", 120.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("spectral", params, seed);
    bool ok = require_check(r, "continuous_eigen_residual", 1e-9, d);
    ok = require_check(r, "discrete_eigen_residual", 1e-9, d) && ok;
    ok = require_check(r, "discrete_orthogonality", 1e-10, d) && ok;
    ok = require_check(r, "expansion_vs_uniformization", 1e-6, d) && ok;
    const auto r2 = gateway::run_suite("laguerre_gateway", params, seed);
    ok = require_check(r2, "isospectral_eigenvalues", 1e-6, d) && ok;
    return ok;
  }});

  criteria.push_back({"C10", "variance decay margin >= -1e-12", 10.0, [&](std::string& d) {
    const auto r = gateway::run_suite("variance_gap", params, seed);
    return require_check(r, "variance_decay_margin", 1e-12, d);
  }});

  criteria.push_back({"C11", "entropy decay bound with margin >= -1e-10", 60.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("entropy", params, seed);
    return require_check(r, "entropy_decay_margin", 1e-10, d);
  }});

  criteria.push_back({"C12", "Bessel-Laguerre identities with the validated shape", 10.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("jensen", params, seed);
    bool ok = require_check(r, "gamma_image_matches_kummer", 1e-8, d);
    ok = require_check(r, "kummer_generating_function", 1e-8, d) && ok;
    ok = require_check(r, "validated_gamma_shape_is_n_beta_plus_1", 0.0, d) && ok;
    return ok;
  }});

  criteria.push_back({"C13", "approximation error slope in [0.8, 1.2]", 30.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("approximation", params, seed);
    bool ok = require_prefix_all_pass(r, "error_loglog_slope", d);
    ok = require_prefix_all_pass(r, "composition_identity", d) && ok;
    return ok;
  }});

  criteria.push_back({"C14", "thinning semi-group, adjoint rows, generator limit", 5.0,
                      [&](std::string& d) {
    const auto r = gateway::run_suite("dilation_semigroup", params, seed);
    bool ok = require_check(r, "thinning_multiplicative_semigroup", 1e-14, d);
    ok = require_check(r, "adjoint_thinning_row_totals", 1e-12, d) && ok;
    ok = require_check(r, "thinning_generator_rate", 0.0, d) && ok;
    return ok;
  }});

  criteria.push_back({"C15", "end-to-end CLI run, >= 15 suites in the JSON report", 300.0,
                      [&](std::string& d) {
    if (gateway_bin.empty()) {
      d += " no-cli-path-given";
      return false;
    }
    const std::string json_path = "acceptance_all_suites.json";
    const std::string cmd = gateway_bin + " verify --suite all --seed 42 --json " + json_path +
                            " > acceptance_cli_output.txt 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      d += " cli-exit-nonzero";
      return false;
    }
    std::ifstream in(json_path);
    if (!in) {
      d += " missing-json";
      return false;
    }
    nlohmann::json arr;
    in >> arr;
    if (!arr.is_array() || arr.size() < 15) {
      d += " fewer-than-15-suites";
      return false;
    }
    for (const auto& suite : arr) {
      for (const auto& check : suite.at("checks")) {
        if (check.at("paper_ref").get<std::string>().empty()) {
          d += " empty-paper-ref";
          return false;
        }
        if (!check.at("pass").get<bool>()) {
          d += " failed-check:" + check.at("name").get<std::string>();
          return false;
        }
      }
    }
    return true;
  }});

  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = crit.run(detail);
    } catch (const std::exception& e) {
      detail += std::string(" exception:") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.budget_seconds) {
      ok = false;
      detail += " over-budget";
    }
    std::printf("[%s] %s: %s (%.2fs / %.0fs)%s\n", ok ? "PASS" : "FAIL", crit.id.c_str(),
                crit.description.c_str(), secs, crit.budget_seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
