#ifndef GATEWAY_SUITES_HPP
#define GATEWAY_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gateway/report.hpp"

namespace gateway {

struct SuiteParams {
  double beta = 0.0;      // 0 = suite default grid
  double sigma = 0.0;
  double varsigma = 0.0;
  double tol_scale = 1.0;
  long n_samples = 100000;
  std::vector<double> t_grid;  // empty = suite default time grid

  std::map<std::string, double> as_map() const;
};

// registered suite names, execution order
const std::vector<std::string>& suite_names();

// identity labels every report check carries; the registry covers each at
// least once (enforced by registry_covers_all_tags)
const std::vector<std::string>& in_scope_tags();

bool is_suite(const std::string& name);

VerificationReport run_suite(const std::string& name, const SuiteParams& params,
                             std::uint64_t seed);

// all suites; jobs > 1 fans suites across that many workers. Reports come back
// in registry order regardless of jobs (deterministic aggregation).
std::vector<VerificationReport> run_all(const SuiteParams& params, std::uint64_t seed,
                                        int jobs = 1);

bool registry_covers_all_tags(const std::vector<VerificationReport>& reports,
                              std::vector<std::string>* missing = nullptr);

}  // namespace gateway

#endif
