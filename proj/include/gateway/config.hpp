#ifndef GATEWAY_CONFIG_HPP
#define GATEWAY_CONFIG_HPP

#include <string>
#include <vector>

#include "gateway/report.hpp"
#include "gateway/suites.hpp"

namespace gateway {

enum class SeedPolicy { fixed, per_cell };

// Declarative verification campaign: each suite runs once per grid cell.
// Grammar in docs/formats.md; unknown keys are rejected.
struct ExperimentGrid {
  std::vector<std::string> suites;
  std::vector<double> beta_grid;   // empty = suite default grids
  std::vector<double> sigma_grid;
  std::vector<double> t_grid;      // forwarded, unused by most suites
  long n_samples = 100000;
  SeedPolicy seed_policy = SeedPolicy::fixed;
  std::uint64_t seed = 42;

  void validate() const;  // throws std::invalid_argument naming the field
};

ExperimentGrid parse_config(const std::string& text);
ExperimentGrid load_config(const std::string& path);

// writes <suite>_<seedhash>.json (idempotent byte-identical overwrite),
// returns the path; serialized behind an advisory lock file in dir
std::string archive_report(const VerificationReport& report, const std::string& dir);

struct CampaignResult {
  std::vector<VerificationReport> reports;
  std::vector<std::string> files;
  std::string index_file;
  bool all_passed = true;
};

// run every (suite x beta x sigma) cell, archive each report plus an
// index.json manifest listing {file, suite, params, pass}
CampaignResult run_campaign(const ExperimentGrid& grid, const std::string& dir);

}  // namespace gateway

#endif
