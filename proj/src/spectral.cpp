#include "gateway/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gateway/quadrature.hpp"
#include "gateway/special.hpp"

namespace gateway {

double discrete_laguerre(int k, double beta, long n) {
  if (k < 0 || n < 0) throw std::domain_error("discrete_laguerre: bad arguments");
  if (!(beta > 0.0)) throw std::domain_error("discrete_laguerre: beta <= 0");
  if (k == 0) return 1.0;
  const Rational b(beta);
  const Rational nb = scalar_from_int<Rational>(n) + b;
  Rational acc(0);
  Rational rising(1);          // (n+beta)_r
  Rational rfact_2r(1);        // r! 2^r
  for (int r = 0; r <= k; ++r) {
    Rational term = gen_binom_t<Rational>(scalar_from_int<Rational>(k) + b - Rational(1), k - r);
    term *= rising;
    term /= rfact_2r;
    if (r & 1) term = -term;
    acc += term;
    rising *= nb + scalar_from_int<Rational>(r);
    rfact_2r *= scalar_from_int<Rational>(2 * (r + 1));
  }
  return to_double(acc);
}

double eigen_check_continuous(double beta, int k, const std::vector<double>& x_grid) {
  if (!(beta > 0.0) || k < 0) throw std::domain_error("eigen_check_continuous: bad arguments");
  // exact polynomial differentiation: residual x L'' + (beta - x) L' + k L
  // formed in rational arithmetic, then evaluated on the grid
  const Rational b(beta);
  const PolySeqQ L = laguerre_poly_coeffs<Rational>(k, b);
  const PolySeqQ residq =
      laguerre_generator_poly<Rational>(b, Rational(1), L) + scalar_from_int<Rational>(k) * L;
  PolySeqD resid, Ld;
  resid.coeffs.resize(residq.coeffs.size());
  for (size_t i = 0; i < residq.coeffs.size(); ++i) resid.coeffs[i] = to_double(residq.coeffs[i]);
  Ld.coeffs.resize(L.coeffs.size());
  for (size_t i = 0; i < L.coeffs.size(); ++i) Ld.coeffs[i] = to_double(L.coeffs[i]);
  double worst = 0.0;
  for (double x : x_grid) {
    const double r = std::abs(resid.eval(x)) / (1.0 + std::abs(Ld.eval(x)));
    worst = std::max(worst, r);
  }
  return worst;
}

double eigen_check_discrete(double beta, int k, long n_max) {
  if (!(beta > 0.0) || k < 0 || n_max < 0)
    throw std::domain_error("eigen_check_discrete: bad arguments");
  std::vector<double> L(static_cast<size_t>(n_max) + 2);
  for (long n = 0; n <= n_max + 1; ++n) L[static_cast<size_t>(n)] = discrete_laguerre(k, beta, n);
  double worst = 0.0;
  for (long n = 0; n <= n_max; ++n) {
    const double up = (double(n) + beta) * L[static_cast<size_t>(n) + 1];
    const double mid = (3.0 * double(n) + beta) * L[static_cast<size_t>(n)];
    const double down = n > 0 ? 2.0 * double(n) * L[static_cast<size_t>(n) - 1] : 0.0;
    const double resid = up - mid + down + double(k) * L[static_cast<size_t>(n)];
    const double scale = 1.0 + std::abs(up) + std::abs(mid) + std::abs(down);
    worst = std::max(worst, std::abs(resid) / scale);
  }
  return worst;
}

int n_beta_tail_cutoff(double beta, double tol) {
  double w = std::pow(2.0, -beta), cum = 0.0;
  for (int n = 0; n < 4000; ++n) {
    cum += w;
    if (1.0 - cum < tol && n > 4) return n + 1;
    w *= 0.5 * (double(n) + beta) / double(n + 1);
  }
  throw std::runtime_error("n_beta_tail_cutoff: tail did not fall below tol");
}

int n_beta_weighted_cutoff(double beta, int poly_degree, double tol) {
  // envelope of n_beta(n) |phi(n)| with phi of degree d scaled like n^d/(2^d ((d/2)!)^2),
  // the size of a degree-d eigenfunction product
  const double half = 0.5 * poly_degree;
  const double lshift = 2.0 * ln_gamma(half + 1.0) + poly_degree * std::log(2.0);
  double lw = -beta * std::log(2.0);  // ln n_beta(0)
  const double ltol = std::log(tol);
  for (int n = 1; n < 40000; ++n) {
    lw += std::log(0.5 * (double(n) - 1.0 + beta) / double(n));
    const double ls = lw + poly_degree * std::log(double(n)) - lshift;
    if (double(n) > 2.2 * half / std::log(2.0) + 8.0 && ls < ltol) return n + 40;
  }
  throw std::runtime_error("n_beta_weighted_cutoff: envelope did not fall below tol");
}

SpectralExpansion spectral_expand_discrete(double beta, const FiniteSeqD& g, int K) {
  if (K < 1) throw std::domain_error("spectral_expand_discrete: K < 1");
  SpectralExpansion exp;
  exp.basis_kind = BasisKind::discrete_laguerre;
  exp.beta = beta;
  exp.truncation = K;
  const int N = std::max(n_beta_weighted_cutoff(beta, 2 * K), g.support_bound() + 2);
  const DiscreteMeasure w = n_beta_measure(beta, N);
  exp.coeffs.resize(static_cast<size_t>(K));
  exp.norms.resize(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    double dot = 0.0, nrm = 0.0, cd = 0.0, cn = 0.0;
    for (int n = 0; n < N; ++n) {
      const double phi = discrete_laguerre(k, beta, n);
      const double td = w.weights[static_cast<size_t>(n)] * phi * g.at(n);
      const double yd = td - cd;
      const double sd = dot + yd;
      cd = (sd - dot) - yd;
      dot = sd;
      const double tn = w.weights[static_cast<size_t>(n)] * phi * phi;
      const double yn = tn - cn;
      const double sn = nrm + yn;
      cn = (sn - nrm) - yn;
      nrm = sn;
    }
    if (nrm < 1e-280) exp.ill_conditioned = true;
    exp.norms[static_cast<size_t>(k)] = nrm;
    exp.coeffs[static_cast<size_t>(k)] = dot / nrm;
  }
  return exp;
}

SpectralExpansion spectral_expand_continuous(double beta, const RealFnHandle& f, int K) {
  if (K < 1) throw std::domain_error("spectral_expand_continuous: K < 1");
  SpectralExpansion exp;
  exp.basis_kind = BasisKind::continuous_laguerre;
  exp.beta = beta;
  exp.truncation = K;
  exp.coeffs.resize(static_cast<size_t>(K));
  exp.norms.resize(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    const double dot = gamma_expectation(
        beta - 1.0, [&](double x) { return f(x) * laguerre_poly(k, beta, x); });
    const double nrm = gamma_expectation(beta - 1.0, [&](double x) {
      const double v = laguerre_poly(k, beta, x);
      return v * v;
    });
    if (nrm < 1e-280) exp.ill_conditioned = true;
    exp.norms[static_cast<size_t>(k)] = nrm;
    exp.coeffs[static_cast<size_t>(k)] = dot / nrm;
  }
  return exp;
}

double spectral_evaluate(const SpectralExpansion& exp, double t, double point) {
  double acc = 0.0;
  for (int k = 0; k < exp.truncation; ++k) {
    const double phi = exp.basis_kind == BasisKind::discrete_laguerre
                           ? discrete_laguerre(k, exp.beta, long(point))
                           : laguerre_poly(k, exp.beta, point);
    acc += std::exp(-double(k) * t) * exp.coeffs[static_cast<size_t>(k)] * phi;
  }
  return acc;
}

double laguerre_norm(double beta, int k, BasisKind kind) {
  if (kind == BasisKind::continuous_laguerre) {
    return gamma_expectation(beta - 1.0, [&](double x) {
      const double v = laguerre_poly(k, beta, x);
      return v * v;
    });
  }
  const int N = n_beta_weighted_cutoff(beta, 2 * k + 2);
  const DiscreteMeasure w = n_beta_measure(beta, N);
  double acc = 0.0, c = 0.0;
  for (int n = 0; n < N; ++n) {
    const double phi = discrete_laguerre(k, beta, n);
    const double term = w.weights[static_cast<size_t>(n)] * phi * phi;
    const double y = term - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  }
  return acc;
}

double laguerre_norm_closed_form(double beta, int k) {
  return std::exp(ln_gamma(double(k) + beta) - ln_factorial(k) - ln_gamma(beta));
}

std::vector<VarianceDecayRow> variance_decay_check(double beta, const FiniteSeqD& g,
                                                   const std::vector<double>& t_grid) {
  if (!(beta > 0.0)) throw std::domain_error("variance_decay_check: beta <= 0");
  const int N = std::max(n_beta_tail_cutoff(beta) + 40, g.support_bound() + 60);
  const DiscreteMeasure w = n_beta_measure(beta, N);
  const TridiagGenerator gen = build_generator(GeneratorKind::laguerre_bd, beta, 1.0, N);
  std::vector<double> gvec(static_cast<size_t>(N), 0.0);
  for (int n = 0; n < g.support_bound(); ++n) gvec[static_cast<size_t>(n)] = g.at(n);
  auto weighted_var = [&](const std::vector<double>& f) {
    double mean = 0.0;
    for (int n = 0; n < N; ++n) mean += w.weights[static_cast<size_t>(n)] * f[static_cast<size_t>(n)];
    double var = 0.0;
    for (int n = 0; n < N; ++n) {
      const double d = f[static_cast<size_t>(n)] - mean;
      var += w.weights[static_cast<size_t>(n)] * d * d;
    }
    return var;
  };
  const double var0 = weighted_var(gvec);
  std::vector<VarianceDecayRow> rows;
  for (double t : t_grid) {
    const std::vector<double> gt = matrix_exp_apply(gen, t, gvec);
    rows.push_back({t, weighted_var(gt), std::exp(-t) * var0});
  }
  return rows;
}

double entropy(const DiscreteMeasure& m, const DiscreteMeasure& ref) {
  double acc = 0.0;
  for (size_t n = 0; n < m.weights.size(); ++n) {
    const double p = m.weights[n];
    if (p <= 0.0) continue;
    const double q = ref.at(long(n));
    if (q <= 0.0)
      throw std::domain_error("entropy: mass outside the support of the reference");
    acc += p * std::log(p / q);
  }
  return acc;
}

std::vector<EntropyDecayRow> entropy_decay_experiment(double beta, double sigma,
                                                      const DiscreteMeasure& m0,
                                                      const std::vector<double>& t_grid, int N) {
  if (!(beta >= 0.5)) throw std::domain_error("entropy_decay_experiment: requires beta >= 1/2");
  if (!(sigma > 0.0)) throw std::domain_error("entropy_decay_experiment: sigma <= 0");
  if (int(m0.weights.size()) > N)
    throw std::domain_error("entropy_decay_experiment: m0 extends past the truncation");
  const DiscreteMeasure ref = n_sigma_measure(beta, sigma, N);
  const TridiagGenerator gen = build_generator(GeneratorKind::laguerre_bd, beta, sigma, N);
  std::vector<double> t_sorted = t_grid;
  std::sort(t_sorted.begin(), t_sorted.end());
  std::vector<double> cur(static_cast<size_t>(N), 0.0);
  for (size_t n = 0; n < m0.weights.size(); ++n) cur[n] = m0.weights[n];
  const double warmup = std::log1p(1.0 / sigma);
  DiscreteMeasure m0_full;
  m0_full.weights = cur;
  const double ent0 = entropy(m0_full, ref);
  std::vector<EntropyDecayRow> rows;
  double t_prev = 0.0;
  for (double t : t_sorted) {
    if (t < t_prev) throw std::domain_error("entropy_decay_experiment: t_grid must be >= 0");
    if (t > t_prev) {
      DiscreteMeasure evolved = matrix_exp_distribution(gen, t - t_prev, cur);
      cur = evolved.weights;
      t_prev = t;
    }
    DiscreteMeasure mt;
    mt.weights = cur;
    const double gap = std::max(0.0, t - warmup);
    rows.push_back({t, entropy(mt, ref), std::exp(-2.0 * gap) * ent0});
  }
  return rows;
}

JensenReport jensen_identity_check(double beta, double q, long n_max) {
  if (!(beta > 0.0) || !(q > 0.0) || n_max < 0)
    throw std::domain_error("jensen_identity_check: bad arguments");
  JensenReport rep;
  const SeriesTolerance tol;
  // the Bessel series noise (~eps * exp(2 sqrt(q x))) caps the quadrature
  // resolution well above 1e-12; 1e-9 is ample for the 1e-8 identity checks
  for (long n = 0; n <= n_max; ++n) {
    const double target = std::exp(-q) * kummer_1f1_neg(int(n), 1.0 + beta, q);
    const double via_shifted = gamma_expectation(
        double(n) + beta, [&](double x) { return normalized_bessel_J(beta, q * x, tol); },
        1e-9, 32, 1024, 1e-15);
    const double via_unshifted = gamma_expectation(
        double(n) + beta - 1.0,
        [&](double x) { return normalized_bessel_J(beta, q * x, tol); }, 1e-9, 32, 1024, 1e-15);
    rep.max_err_shifted_shape = std::max(rep.max_err_shifted_shape, std::abs(via_shifted - target));
    rep.max_err_unshifted_shape = std::max(rep.max_err_unshifted_shape, std::abs(via_unshifted - target));
  }
  for (double x = 0.0; x <= 10.0; x += 0.5) {
    const double lhs = lambda_apply(
        DiscreteFnHandle([&](long n) { return kummer_1f1_neg(int(n), 1.0 + beta, q); }), x);
    const double rhs = normalized_bessel_J(beta, q * x, tol);
    rep.max_err_generating = std::max(rep.max_err_generating, std::abs(lhs - rhs));
  }
  rep.validated_shape =
      rep.max_err_shifted_shape <= rep.max_err_unshifted_shape ? "n+beta+1" : "n+beta";
  return rep;
}

std::vector<double> isospectral_eigenvalues(double beta, int N, int K) {
  if (!(beta > 0.0) || N < 2 || K < 1 || K > N)
    throw std::domain_error("isospectral_eigenvalues: bad arguments");
  const TridiagGenerator gen = build_generator(GeneratorKind::laguerre_bd, beta, 1.0, N);
  Eigen::VectorXd diag(N), sub(N - 1);
  for (int m = 0; m < N; ++m) diag[m] = gen.rows[static_cast<size_t>(m)].diag;
  for (int m = 0; m + 1 < N; ++m)
    sub[m] = std::sqrt(gen.rows[static_cast<size_t>(m)].super * gen.rows[static_cast<size_t>(m) + 1].sub);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> top(static_cast<size_t>(K), 0.0);
  for (int k = 0; k < K; ++k) top[static_cast<size_t>(k)] = es.eigenvalues()[N - 1 - k];
  return top;
}

}  // namespace gateway
