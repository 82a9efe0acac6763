#ifndef GATEWAY_STATS_HPP
#define GATEWAY_STATS_HPP

#include <functional>
#include <vector>

#include "gateway/semigroups.hpp"

namespace gateway {

enum class McTestKind { chi_square_pmf, ks_continuous, two_sample_ks, two_sample_chi };

struct McTest {
  McTestKind kind = McTestKind::chi_square_pmf;
  long n_samples = 100000;
  double alpha = 0.01;
  double min_expected = 5.0;  // discrete bins merged until this expected count

  void validate() const;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Pearson chi-square of integer samples against a pmf; trailing bins merged
// until every expected count >= test.min_expected.
TestResult chi_square_pmf_test(const std::vector<long>& samples, const DiscreteMeasure& pmf,
                               const McTest& test);

// one-sample Kolmogorov-Smirnov with the asymptotic (Stephens-corrected)
// p-value; requires >= 1000 samples and a monotone cdf
TestResult ks_test(const std::vector<double>& samples, const std::function<double(double)>& cdf);

TestResult two_sample_ks_test(const std::vector<double>& a, const std::vector<double>& b);

// two-sample chi-square on integer samples, shared binning with tail merging
TestResult two_sample_chi_test(const std::vector<long>& a, const std::vector<long>& b,
                               double min_expected = 5.0);

}  // namespace gateway

#endif
