#include "gateway/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gateway/special.hpp"

namespace gateway {

void McTest::validate() const {
  if (n_samples < 1000) throw std::domain_error("McTest: n_samples must be >= 1000");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("McTest: alpha outside (0,1)");
}

namespace {

// asymptotic Kolmogorov survival Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2)
double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
    acc += term;
    if (std::abs(term) < 1e-18) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * acc));
}

double ks_p_value(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
}

struct Bin {
  long lo, hi;          // inclusive state range
  double observed = 0;  // counts (or count a for two-sample)
  double expected = 0;  // expected counts (or count b)
};

// merge consecutive states into bins until `expected` >= min_expected; the
// final partial bin is folded into its predecessor
std::vector<Bin> merge_bins(const std::vector<double>& expected_per_state, double min_expected) {
  std::vector<Bin> bins;
  Bin cur{0, -1, 0.0, 0.0};
  for (long s = 0; s < long(expected_per_state.size()); ++s) {
    if (cur.hi < cur.lo) cur.lo = s;
    cur.hi = s;
    cur.expected += expected_per_state[static_cast<size_t>(s)];
    if (cur.expected >= min_expected) {
      bins.push_back(cur);
      cur = Bin{s + 1, s, 0.0, 0.0};
    }
  }
  if (cur.hi >= cur.lo) {
    if (bins.empty())
      bins.push_back(cur);
    else {
      bins.back().hi = cur.hi;
      bins.back().expected += cur.expected;
    }
  }
  return bins;
}

}  // namespace

TestResult chi_square_pmf_test(const std::vector<long>& samples, const DiscreteMeasure& pmf,
                               const McTest& test) {
  test.validate();
  if (samples.empty()) throw std::domain_error("chi_square_pmf_test: no samples");
  const double n = double(samples.size());
  long max_obs = 0;
  for (long s : samples) max_obs = std::max(max_obs, s);
  const long states = std::max<long>(max_obs + 1, long(pmf.weights.size()));
  std::vector<double> expected(static_cast<size_t>(states), 0.0);
  double mass = 0.0;
  for (long s = 0; s < states; ++s) {
    expected[static_cast<size_t>(s)] = n * pmf.at(s);
    mass += pmf.at(s);
  }
  if (mass < 1.0 - 1e-9) {
    // fold the pmf tail into the last state so expectations sum to n
    expected.back() += n * (1.0 - mass);
  }
  std::vector<Bin> bins = merge_bins(expected, test.min_expected);
  if (bins.size() < 2)
    throw std::domain_error("chi_square_pmf_test: fewer than 2 bins after merging");
  for (long s : samples) {
    for (auto& b : bins)
      if (s >= b.lo && s <= b.hi) {
        b.observed += 1.0;
        break;
      }
  }
  double stat = 0.0;
  for (const auto& b : bins) {
    const double d = b.observed - b.expected;
    stat += d * d / b.expected;
  }
  return {stat, chi2_sf(stat, int(bins.size()) - 1)};
}

TestResult ks_test(const std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 1000) throw std::domain_error("ks_test: requires >= 1000 samples");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = double(sorted.size());
  double d = 0.0;
  double prev_c = -1.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double c = cdf(sorted[i]);
    if (c < prev_c - 1e-12) throw std::domain_error("ks_test: cdf is not monotone");
    prev_c = std::max(prev_c, c);
    d = std::max(d, std::max((double(i) + 1.0) / n - c, c - double(i) / n));
  }
  return {d, ks_p_value(d, n)};
}

TestResult two_sample_ks_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 1000 || b.size() < 1000)
    throw std::domain_error("two_sample_ks_test: requires >= 1000 samples each");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / double(sa.size()) - double(j) / double(sb.size())));
  }
  const double n_eff =
      double(sa.size()) * double(sb.size()) / double(sa.size() + sb.size());
  return {d, ks_p_value(d, n_eff)};
}

TestResult two_sample_chi_test(const std::vector<long>& a, const std::vector<long>& b,
                               double min_expected) {
  if (a.empty() || b.empty()) throw std::domain_error("two_sample_chi_test: empty sample");
  long mx = 0;
  for (long s : a) mx = std::max(mx, s);
  for (long s : b) mx = std::max(mx, s);
  std::vector<double> ca(static_cast<size_t>(mx) + 1, 0.0), cb(static_cast<size_t>(mx) + 1, 0.0);
  for (long s : a) ca[static_cast<size_t>(s)] += 1.0;
  for (long s : b) cb[static_cast<size_t>(s)] += 1.0;
  // merge on pooled counts so both samples use one binning
  std::vector<double> pooled(static_cast<size_t>(mx) + 1);
  for (size_t s = 0; s < pooled.size(); ++s) pooled[s] = 0.5 * (ca[s] + cb[s]);
  std::vector<Bin> bins = merge_bins(pooled, min_expected);
  if (bins.size() < 2)
    throw std::domain_error("two_sample_chi_test: fewer than 2 bins after merging");
  const double na = double(a.size()), nb = double(b.size());
  const double ra = std::sqrt(nb / na), rb = std::sqrt(na / nb);
  double stat = 0.0;
  for (const auto& bin : bins) {
    double oa = 0.0, ob = 0.0;
    for (long s = bin.lo; s <= bin.hi && s <= mx; ++s) {
      oa += ca[static_cast<size_t>(s)];
      ob += cb[static_cast<size_t>(s)];
    }
    if (oa + ob <= 0.0) continue;
    const double d = ra * oa - rb * ob;
    stat += d * d / (oa + ob);
  }
  return {stat, chi2_sf(stat, int(bins.size()) - 1)};
}

}  // namespace gateway
