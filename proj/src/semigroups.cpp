#include "gateway/semigroups.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gateway/quadrature.hpp"
#include "gateway/special.hpp"

namespace gateway {

double DiscreteMeasure::total() const {
  double acc = 0.0, c = 0.0;
  for (double w : weights) {
    const double y = w - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  }
  return acc;
}

double DiscreteMeasure::mean() const {
  double acc = 0.0;
  for (size_t n = 0; n < weights.size(); ++n) acc += double(n) * weights[n];
  return acc;
}

bool DiscreteMeasure::is_probability(double tol) const {
  for (double w : weights)
    if (w < -tol) return false;
  const double s = total() + tail_mass_bound;
  return s >= 1.0 - tol && s <= 1.0 + tol;
}

double ContinuousDensity::normalization_defect(double upper) const {
  // substitute y = u^2: keeps integrable power singularities at 0 smooth
  const double integral = adaptive_simpson(
      [this](double u) { return 2.0 * u * pdf(u * u); }, 0.0, std::sqrt(upper),
      check_tol * 0.1);
  return std::abs(1.0 - integral);
}

double bessel_laplace(double beta, double t, double lam, double x) {
  if (!(lam >= 0.0) || !(t >= 0.0) || !(x >= 0.0) || !(beta >= 0.0))
    throw std::domain_error("bessel_laplace: bad arguments");
  const double d = 1.0 + lam * t;
  return std::pow(d, -beta) * std::exp(-x * lam / d);
}

double bessel_transition_density(double beta, double t, double x, double y) {
  if (!(t > 0.0) || !(beta > 0.0)) throw std::domain_error("bessel_transition_density: t, beta must be > 0");
  if (!(x >= 0.0) || !(y > 0.0)) throw std::domain_error("bessel_transition_density: x >= 0, y > 0 required");
  const double xs = x / t, ys = y / t;
  if (xs == 0.0)
    return std::exp((beta - 1.0) * std::log(ys) - ys - ln_gamma(beta)) / t;
  // q_1(xs, ys) = (ys/xs)^{(beta-1)/2} e^{-xs-ys} I_{beta-1}(2 sqrt(xs ys)), in logs
  const double arg = 2.0 * std::sqrt(xs * ys);
  const double li = std::log(modified_bessel_I(beta - 1.0, arg));
  const double lq = 0.5 * (beta - 1.0) * (std::log(ys) - std::log(xs)) - xs - ys + li;
  return std::exp(lq) / t;
}

double bd_thinned_pgf(double beta, double w, double v, double s, long n) {
  const double dw = 1.0 + w * (1.0 - s);
  return std::pow(dw, -beta) * std::pow((1.0 + (w - v) * (1.0 - s)) / dw, double(n));
}

double bd_pgf(double beta, double t, double s, long n) {
  if (!(std::abs(s) < 1.0)) throw std::domain_error("bd_pgf: requires |s| < 1");
  if (!(t >= 0.0) || n < 0) throw std::domain_error("bd_pgf: bad arguments");
  return bd_thinned_pgf(beta, t, 1.0, s, n);
}

namespace {

struct CoeffResult {
  double value = 0.0;
  double condition = 1.0;  // sum |term| / |value|, the cancellation factor
};

// single coefficient [s^m] of (c - d s)^n (1+w)^{-(n+beta)} (1 - p s)^{-(n+beta)},
// c = 1+w-v, d = w-v, p = w/(1+w). The alternating j-sum cancels badly once
// n (t-1) is sizeable (the NB factor amplifies it well past ((c+|d|)/(1+w))^n),
// so terms are built and accumulated in extended precision and the measured
// cancellation is reported for route selection.
CoeffResult thinned_coeff(double beta, double w, double v, long n, long m) {
  const long double c1 = 1.0L + (long double)w - (long double)v;
  const long double d = (long double)w - (long double)v;
  const long double p = (long double)w / (1.0L + (long double)w);
  const long double l1pw = std::log1p((long double)w);
  const long jmax = std::min(n, m);
  long double acc = 0.0L, abs_acc = 0.0L;
  for (long j = 0; j <= jmax; ++j) {
    if (c1 == 0.0L && j != n) continue;
    if (d == 0.0L && j > 0) continue;
    if (p == 0.0L && m - j > 0) continue;
    long double lbinom_nb = 0.0L;  // ln C(n+beta+m-j-1, m-j)
    for (long i = 0; i < m - j; ++i)
      lbinom_nb += std::log(((long double)n + (long double)beta + (long double)(m - j) - 1.0L -
                             (long double)i) /
                            (long double)(i + 1));
    long double lmag = lbinom_nb - (long double)n * l1pw +
                       (long double)(m - j) * (p > 0.0L ? std::log(p) : 0.0L);
    for (long i = 0; i < j; ++i)
      lmag += std::log((long double)(n - i) / (long double)(i + 1));
    if (c1 > 0.0L) lmag += (long double)(n - j) * std::log(c1);
    if (d != 0.0L) lmag += (long double)j * std::log(std::abs(d));
    long double term = std::exp(lmag);
    if (d > 0.0L && (j & 1)) term = -term;  // (-d)^j
    acc += term;
    abs_acc += std::abs(term);
  }
  const long double pref = std::pow(1.0L + (long double)w, -(long double)beta);
  CoeffResult out;
  out.value = double(acc * pref);
  out.condition = acc != 0.0L ? double(abs_acc / std::abs(acc)) : 1.0;
  return out;
}

}  // namespace

bool bd_row_formula_ok(double beta, double w, double v, long n) {
  (void)beta;
  if (n == 0) return true;
  const double c1 = std::abs(1.0 + w - v);
  const double d = std::abs(w - v);
  // crude pre-guard; laguerre_bdK_row re-checks the measured cancellation
  return double(n) * std::log((c1 + d) / (1.0 + w)) < 20.0;
}

double bd_transition(double beta, double t, long n, long m) {
  if (!(t > 0.0) || n < 0 || m < 0) throw std::domain_error("bd_transition: bad arguments");
  const double v = thinned_coeff(beta, t, 1.0, n, m).value;
  return v < 0.0 && v > -1e-12 ? 0.0 : v;  // cancellation dust in the far tail
}

std::vector<double> bd_thinned_row(double beta, double w, double v, long n, long m_max) {
  std::vector<double> row(static_cast<size_t>(m_max) + 1, 0.0);
  for (long m = 0; m <= m_max; ++m) {
    const double val = thinned_coeff(beta, w, v, n, m).value;
    row[static_cast<size_t>(m)] = val < 0.0 && val > -1e-12 ? 0.0 : val;
  }
  return row;
}

double bd_thinned_row_condition(double beta, double w, double v, long n, long m_max) {
  double worst = 1.0;
  for (long m = 0; m <= m_max; ++m) {
    const CoeffResult r = thinned_coeff(beta, w, v, n, m);
    if (std::abs(r.value) > 1e-280) worst = std::max(worst, r.condition);
  }
  return worst;
}

Rational bd_transition_rational_part(const Rational& beta, const Rational& t, long n, long m) {
  // bbQ_t(n,m) (1+t)^{beta}: sum_j C(n,j) t^{n-j} (1-t)^j (1+t)^{-(n+m-j)}
  //                           * genbinom(n+beta+m-j-1, m-j) t^{m-j}
  const Rational one(1);
  const Rational opt = one + t;
  Rational acc(0);
  const long jmax = std::min(n, m);
  for (long j = 0; j <= jmax; ++j) {
    Rational term = binom_t<Rational>(int(n), int(j));
    for (long i = 0; i < n - j; ++i) term *= t;
    Rational omt = one - t;
    for (long i = 0; i < j; ++i) term *= omt;
    term *= gen_binom_t<Rational>(scalar_from_int<Rational>(n) + beta +
                                      scalar_from_int<Rational>(m - j) - one,
                                  int(m - j));
    for (long i = 0; i < m - j; ++i) term *= t;
    Rational denom(1);
    for (long i = 0; i < n + m - j; ++i) denom *= opt;
    term /= denom;
    acc += term;
  }
  return acc;
}

double q1_discrete_kernel(double beta, long n, long m) {
  if (!(beta > 0.0) || n < 0 || m < 0) throw std::domain_error("q1_discrete_kernel: bad arguments");
  // 2^{-(m+n+beta)} (m+n+beta-1)...(n+beta)/m!
  const double lp = ln_gamma(double(m + n) + beta) - ln_gamma(double(n) + beta) -
                    ln_factorial(int(m)) - (double(m + n) + beta) * std::log(2.0);
  return std::exp(lp);
}

namespace {

struct UniformizedRun {
  std::vector<double> out;
  double poisson_trunc_error = 0.0;
  double boundary_flux = 0.0;
};

// row-vector evolution v <- v (I + G/theta), distribution side
void step_distribution(const TridiagGenerator& gen, double theta, const std::vector<double>& v,
                       std::vector<double>& next) {
  const size_t n = v.size();
  for (size_t m = 0; m < n; ++m) {
    double acc = v[m] + v[m] * gen.rows[m].diag / theta;
    if (m > 0) acc += v[m - 1] * gen.rows[m - 1].super / theta;
    if (m + 1 < n) acc += v[m + 1] * gen.rows[m + 1].sub / theta;
    next[m] = acc;
  }
}

// column side f <- (I + G/theta) f, function evolution
void step_function(const TridiagGenerator& gen, double theta, const std::vector<double>& f,
                   std::vector<double>& next) {
  const size_t n = f.size();
  for (size_t m = 0; m < n; ++m) {
    double acc = f[m] + f[m] * gen.rows[m].diag / theta;
    if (m > 0) acc += gen.rows[m].sub * f[m - 1] / theta;
    if (m + 1 < n) acc += gen.rows[m].super * f[m + 1] / theta;
    next[m] = acc;
  }
}

UniformizedRun uniformize(const TridiagGenerator& gen, double t, std::vector<double> v,
                          double eps, bool distribution_side) {
  const size_t N = gen.rows.size();
  if (v.size() != N) throw std::invalid_argument("uniformize: size mismatch");
  double theta = 0.0;
  for (const auto& r : gen.rows) theta = std::max(theta, std::abs(r.diag));
  UniformizedRun run;
  const double mu = theta * t;
  if (mu == 0.0) {
    run.out = std::move(v);
    return run;
  }
  // Poisson weights over [0, khi]; log-space, renormalization-free
  const long khi = long(std::ceil(mu + 10.0 * std::sqrt(mu) + 35.0 - std::log(eps)));
  const double lmu = std::log(mu);
  std::vector<double> wk(static_cast<size_t>(khi) + 1);
  double wsum = 0.0;
  for (long k = 0; k <= khi; ++k) {
    wk[static_cast<size_t>(k)] = std::exp(-mu + double(k) * lmu - ln_factorial(k));
    wsum += wk[static_cast<size_t>(k)];
  }
  run.poisson_trunc_error = std::max(0.0, 1.0 - wsum);

  std::vector<double> acc(N, 0.0), next(N, 0.0);
  std::vector<double> boundary_occ(static_cast<size_t>(khi) + 1, 0.0);
  for (long k = 0; k <= khi; ++k) {
    const double w = wk[static_cast<size_t>(k)];
    for (size_t m = 0; m < N; ++m) acc[m] += w * v[m];
    boundary_occ[static_cast<size_t>(k)] = v[N - 1];
    if (k < khi) {
      if (distribution_side)
        step_distribution(gen, theta, v, next);
      else
        step_function(gen, theta, v, next);
      std::swap(v, next);
    }
  }
  // boundary flux estimate: birth(N-1) * integral of occupancy at N-1 over [0,t]
  if (distribution_side) {
    double surv = 0.0, flux = 0.0;
    for (long k = khi; k >= 0; --k) {
      // surv = P(Pois(mu) > k)
      flux += boundary_occ[static_cast<size_t>(k)] * surv;
      surv += wk[static_cast<size_t>(k)];
    }
    run.boundary_flux = gen.birth_rate(int(N) - 1) * flux / theta;
  }
  run.out = std::move(acc);
  return run;
}

}  // namespace

DiscreteMeasure matrix_exp_distribution(const TridiagGenerator& gen, double t,
                                        const std::vector<double>& init, double eps) {
  if (!(t >= 0.0)) throw std::domain_error("matrix_exp: t < 0");
  UniformizedRun run = uniformize(gen, t, init, eps, true);
  DiscreteMeasure out;
  out.weights = std::move(run.out);
  // numerical floor: uniformization can leave tiny negatives at the 1e-16 level
  for (double& w : out.weights)
    if (w < 0.0 && w > -1e-13) w = 0.0;
  out.tail_mass_bound = run.boundary_flux + run.poisson_trunc_error;
  if (out.tail_mass_bound > 1e-3)
    throw std::runtime_error(
        "matrix_exp: truncation too small (boundary flux above threshold)");
  return out;
}

DiscreteMeasure matrix_exp_transition(const TridiagGenerator& gen, double t, int row, double eps) {
  if (row < 0 || row >= gen.size) throw std::invalid_argument("matrix_exp_transition: row out of range");
  std::vector<double> v(static_cast<size_t>(gen.size), 0.0);
  v[static_cast<size_t>(row)] = 1.0;
  return matrix_exp_distribution(gen, t, v, eps);
}

std::vector<double> matrix_exp_apply(const TridiagGenerator& gen, double t,
                                     const std::vector<double>& f, double eps) {
  if (!(t >= 0.0)) throw std::domain_error("matrix_exp: t < 0");
  return uniformize(gen, t, f, eps, false).out;
}

DiscreteMeasure m_beta_measure(double beta, int N) {
  DiscreteMeasure m;
  m.weights.resize(static_cast<size_t>(N));
  double w = 1.0;
  for (int n = 0; n < N; ++n) {
    m.weights[static_cast<size_t>(n)] = w;
    w *= (double(n) + beta) / double(n + 1);
  }
  m.tail_mass_bound = 0.0;  // infinite measure; bound not meaningful
  return m;
}

DiscreteMeasure n_sigma_measure(double beta, double sigma, int N) {
  if (!(beta > 0.0) || !(sigma > 0.0)) throw std::domain_error("n_sigma_measure: beta, sigma must be > 0");
  DiscreteMeasure m;
  m.weights.resize(static_cast<size_t>(N));
  const double p = sigma / (1.0 + sigma);
  double w = std::pow(1.0 + sigma, -beta);
  for (int n = 0; n < N; ++n) {
    m.weights[static_cast<size_t>(n)] = w;
    w *= p * (double(n) + beta) / double(n + 1);
  }
  m.tail_mass_bound = std::max(0.0, 1.0 - m.total());
  return m;
}

DiscreteMeasure n_beta_measure(double beta, int N) { return n_sigma_measure(beta, 1.0, N); }

ContinuousDensity mu_beta_density(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("mu_beta_density: beta <= 0");
  ContinuousDensity d;
  const double lg = ln_gamma(beta);
  d.pdf = [beta, lg](double x) {
    return x > 0.0 ? std::exp((beta - 1.0) * std::log(x) - lg) : 0.0;
  };
  return d;
}

ContinuousDensity nu_sigma_density(double beta, double sigma) {
  if (!(beta > 0.0) || !(sigma > 0.0)) throw std::domain_error("nu_sigma_density: beta, sigma must be > 0");
  ContinuousDensity d;
  const double lg = ln_gamma(beta) + beta * std::log(sigma);
  d.pdf = [beta, sigma, lg](double x) {
    return x > 0.0 ? std::exp((beta - 1.0) * std::log(x) - x / sigma - lg) : 0.0;
  };
  return d;
}

double laguerre_K_apply(double beta, double sigma, double t, const RealFnHandle& f, double x) {
  if (!(beta > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || !(x >= 0.0))
    throw std::domain_error("laguerre_K_apply: bad arguments");
  const double u = sigma * std::expm1(t);
  const double v = std::exp(-t);
  if (u == 0.0) return f(x);
  // integrate f(v .) against Q_u(x, .) via its Poisson-gamma mixture
  DiscreteFnHandle inner = [&](long n) {
    return gamma_expectation(
        double(n) + beta - 1.0, [&](double y) { return f(v * u * y); }, 1e-12, 32, 1024, 1e-14);
  };
  return lambda_apply(inner, x / u);
}

DiscreteMeasure laguerre_bdK_row(double beta, double sigma, double t, long n, int N) {
  if (!(beta > 0.0) || !(sigma > 0.0) || !(t >= 0.0) || n < 0 || N < 1)
    throw std::domain_error("laguerre_bdK_row: bad arguments");
  const double u = sigma * std::expm1(t);
  const double v = std::exp(-t);
  const double w = u * v;  // sigma (1 - e^{-t})
  DiscreteMeasure out;
  if (u == 0.0) {
    out.weights.assign(static_cast<size_t>(N), 0.0);
    if (n < N) out.weights[static_cast<size_t>(n)] = 1.0;
    return out;
  }
  if (u <= 50.0 && bd_row_formula_ok(beta, w, v, n) &&
      bd_thinned_row_condition(beta, w, v, n, N - 1) < 1e5) {
    out.weights = bd_thinned_row(beta, w, v, n, N - 1);
    out.tail_mass_bound = std::max(0.0, 1.0 - out.total());
    return out;
  }
  const int M = std::max(N, suggest_truncation(beta, w, v, n, 1e-13));
  TridiagGenerator gen = build_generator(GeneratorKind::laguerre_bd, beta, sigma, M);
  DiscreteMeasure full = matrix_exp_transition(gen, t, int(n));
  out.weights.assign(full.weights.begin(), full.weights.begin() + N);
  out.tail_mass_bound = std::max(0.0, 1.0 - out.total());
  return out;
}

int suggest_truncation(double beta, double w, double v, long n, double tol) {
  if (!(w > 0.0)) return int(n) + 8;
  const double ls = std::log1p(1.0 / (2.0 * w));
  const double lf = beta * std::log(2.0) + double(n) * std::log((w + v) / w);
  const int N = int(std::ceil((lf - std::log(tol)) / ls));
  return std::max(N, int(n) + 8);
}

}  // namespace gateway
