// gateway: samplers, verification suites, spectral tables and entropy decay
// for the squared-Bessel / birth-death intertwining library
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gateway/config.hpp"
#include "gateway/report.hpp"
#include "gateway/rng.hpp"
#include "gateway/semigroups.hpp"
#include "gateway/simulate.hpp"
#include "gateway/spectral.hpp"
#include "gateway/suites.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("GATEWAY_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

int cmd_sample(const std::string& process, double beta, double sigma, double t, double x0,
               const std::string& method, long n, std::uint64_t seed, const std::string& out) {
  gateway::RngStream rng(seed, 0);
  std::vector<double> reals;
  std::vector<long> ints;
  const long n0 = long(x0);
  for (long i = 0; i < n; ++i) {
    if (process == "bessel") {
      if (method == "pipeline") {
        const double s = std::min(1.0, t);
        reals.push_back(gateway::bessel_pipeline_sample(beta, s, t - s, x0, rng));
      } else {
        reals.push_back(gateway::bessel_exact_sample(beta, t, x0, rng));
      }
    } else if (process == "laguerre") {
      reals.push_back(gateway::laguerre_exact_sample(beta, sigma, t, x0, rng));
    } else if (process == "bd-bessel") {
      if (method == "path") {
        ints.push_back(
            gateway::bd_path(gateway::GeneratorKind::bessel_bd, beta, 0.0, n0, t, rng)
                .end_state());
      } else {
        ints.push_back(gateway::bd_endpoint_branching(beta, t, n0, rng));
      }
    } else if (process == "bd-laguerre") {
      if (method == "path") {
        ints.push_back(gateway::laguerre_bd_path_sample(beta, sigma, t, n0, rng));
      } else {
        ints.push_back(gateway::laguerre_bd_exact_sample(beta, sigma, t, n0, rng,
                                                         method == "pipeline"));
      }
    }
  }
  if (!out.empty()) {
    if (!reals.empty())
      gateway::write_samples_csv(out, reals);
    else
      gateway::write_samples_csv(out, ints);
  } else {
    std::puts("index,value");
    for (size_t i = 0; i < reals.size(); ++i) std::printf("%zu,%.17e\n", i, reals[i]);
    for (size_t i = 0; i < ints.size(); ++i) std::printf("%zu,%ld\n", i, ints[i]);
  }
  return 0;
}

int cmd_verify(const std::string& suite, const gateway::SuiteParams& params, std::uint64_t seed,
               const std::string& json_path, int jobs) {
  std::vector<gateway::VerificationReport> reports;
  if (suite == "all") {
    reports = gateway::run_all(params, seed, jobs);
  } else {
    reports.push_back(gateway::run_suite(suite, params, seed));
  }
  bool all_pass = true;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      std::printf("[%s] %s/%s  stat=%.3g  threshold=%.3g  (%s)\n", c.pass ? "PASS" : "FAIL",
                  r.suite.c_str(), c.name.c_str(), c.statistic, c.threshold,
                  c.paper_ref.c_str());
      all_pass = all_pass && c.pass;
    }
  }
  std::printf("%s: %zu suite(s), %s\n", suite.c_str(), reports.size(),
              all_pass ? "all checks passed" : "CHECK FAILURES");
  if (!json_path.empty()) {
    const std::string text = suite == "all" ? gateway::reports_to_json(reports)
                                            : gateway::report_to_json(reports.front());
    gateway::write_report_file(json_path, text);
  }
  return all_pass ? 0 : kExitCheckFailure;
}

int cmd_spectral(double beta, double t, int truncation, int grid, const std::string& out) {
  const gateway::SpectralExpansion exp =
      gateway::spectral_expand_discrete(beta, gateway::FiniteSeqD::indicator(0), truncation);
  FILE* f = out.empty() ? stdout : std::fopen(out.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "cannot open %s\n", out.c_str());
    return kExitUsage;
  }
  std::fputs("k,eigenvalue,coefficient,norm\n", f);
  for (int k = 0; k < truncation; ++k)
    std::fprintf(f, "%d,%.17e,%.17e,%.17e\n", k, std::exp(-double(k) * t), exp.coeffs[static_cast<size_t>(k)],
                 exp.norms[static_cast<size_t>(k)]);
  if (f != stdout) std::fclose(f);

  // reconstruction quality against the uniformization oracle on the grid
  const int N = std::max(4 * grid + 80, 160);
  const gateway::TridiagGenerator gen =
      gateway::build_generator(gateway::GeneratorKind::laguerre_bd, beta, 1.0, N);
  std::vector<double> g(static_cast<size_t>(N), 0.0);
  g[0] = 1.0;
  const std::vector<double> oracle = gateway::matrix_exp_apply(gen, t, g);
  double sup = 0.0;
  for (int n = 0; n < grid; ++n)
    sup = std::max(sup, std::abs(gateway::spectral_evaluate(exp, t, double(n)) -
                                 oracle[static_cast<size_t>(n)]));
  std::fprintf(stderr, "max |expansion - uniformization| on 0..%d: %.3e\n", grid - 1, sup);
  return 0;
}

int cmd_entropy(double beta, double sigma, double t_max, int steps, long init,
                const std::string& out) {
  std::vector<double> t_grid;
  for (int i = 0; i <= steps; ++i) t_grid.push_back(t_max * double(i) / double(steps));
  const int N =
      std::max(gateway::suggest_truncation(beta, sigma, std::exp(-t_max), init, 1e-13), 60);
  gateway::DiscreteMeasure m0;
  m0.weights.assign(static_cast<size_t>(init) + 1, 0.0);
  m0.weights[static_cast<size_t>(init)] = 1.0;
  const auto rows = gateway::entropy_decay_experiment(beta, sigma, m0, t_grid, N);
  FILE* f = out.empty() ? stdout : std::fopen(out.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "cannot open %s\n", out.c_str());
    return kExitUsage;
  }
  std::fputs("t,entropy,bound\n", f);
  for (const auto& row : rows)
    std::fprintf(f, "%.17e,%.17e,%.17e\n", row.t, row.ent, row.bound);
  if (f != stdout) std::fclose(f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous/discrete Bessel-Laguerre intertwining toolkit"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "draw from one of the four processes");
  std::string process = "bessel", method = "mixture", out;
  double beta = 1.0, sigma = 1.0, t = 1.0, x0 = 0.0;
  long n = 10;
  std::uint64_t seed = 42;
  sample->add_option("--process", process)
      ->check(CLI::IsMember({"bessel", "bd-bessel", "laguerre", "bd-laguerre"}))
      ->required();
  sample->add_option("--beta", beta)->required();
  sample->add_option("--sigma", sigma);
  sample->add_option("--t", t)->required();
  sample->add_option("--x0", x0);
  sample->add_option("--method", method)
      ->check(CLI::IsMember({"mixture", "pipeline", "compose", "path"}));
  sample->add_option("--n", n)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite;
  gateway::SuiteParams params;
  std::string json_path;
  int jobs = 1;
  double tol = 1.0;
  verify->add_option("--suite", suite)->required();
  verify->add_option("--beta", params.beta);
  verify->add_option("--sigma", params.sigma);
  verify->add_option("--varsigma", params.varsigma);
  verify->add_option("--tol", tol)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--json", json_path);
  verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  verify->add_option("--samples", params.n_samples)->check(CLI::PositiveNumber);

  // spectral
  auto* spectral = app.add_subcommand("spectral", "spectral expansion table");
  int truncation = 20, grid = 40;
  spectral->add_option("--beta", beta)->required();
  spectral->add_option("--t", t)->required();
  spectral->add_option("--truncation", truncation)->check(CLI::PositiveNumber);
  spectral->add_option("--grid", grid)->check(CLI::PositiveNumber);
  spectral->add_option("--out", out);

  // entropy
  auto* entropy = app.add_subcommand("entropy", "entropy decay toward equilibrium");
  double t_max = 5.0;
  int steps = 20;
  long init = 0;
  entropy->add_option("--beta", beta)->required();
  entropy->add_option("--sigma", sigma)->required();
  entropy->add_option("--t-max", t_max);
  entropy->add_option("--steps", steps)->check(CLI::PositiveNumber);
  entropy->add_option("--init", init)->check(CLI::NonNegativeNumber);
  entropy->add_option("--out", out);

  // campaign
  auto* campaign = app.add_subcommand("campaign", "run a declarative verification campaign");
  std::string config_path, out_dir = ".";
  campaign->add_option("--config", config_path)->required();
  campaign->add_option("--out", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(process, beta, sigma, t, x0, method, n, effective_seed(seed), out);
    if (*verify) {
      if (suite != "all" && !gateway::is_suite(suite)) {
        std::fprintf(stderr, "unknown suite '%s'\n", suite.c_str());
        return kExitUsage;
      }
      params.tol_scale = tol;
      return cmd_verify(suite, params, effective_seed(seed), json_path, jobs);
    }
    if (*spectral) return cmd_spectral(beta, t, truncation, grid, out);
    if (*entropy) {
      if (beta < 0.5) {
        std::fprintf(stderr, "entropy: requires beta >= 1/2\n");
        return kExitUsage;
      }
      return cmd_entropy(beta, sigma, t_max, steps, init, out);
    }
    if (*campaign) {
      const gateway::ExperimentGrid grid_cfg = gateway::load_config(config_path);
      const gateway::CampaignResult result = gateway::run_campaign(grid_cfg, out_dir);
      std::printf("campaign: %zu cells, index at %s, %s\n", result.reports.size(),
                  result.index_file.c_str(), result.all_passed ? "all passed" : "FAILURES");
      return result.all_passed ? 0 : kExitCheckFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailure;
  }
  return kExitUsage;
}
