#include "gateway/generators.hpp"

#include "doctest.h"
#include "gateway/rng.hpp"

using namespace gateway;

namespace {

double qd(const Rational& q) { return to_double(q); }

// exact comparison on the prefix where neither truncated sequence is polluted
bool equal_prefix(const FiniteSeqQ& a, const FiniteSeqQ& b, int upto) {
  for (int n = 0; n <= upto; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

}  // namespace

TEST_CASE("nabla on monomials") {
  // constant polynomial lifts to the all-ones sequence
  const FiniteSeqQ ones = nabla(PolySeqQ::monomial(0));
  for (int n = 0; n < ones.support_bound(); ++n) CHECK(ones.at(n) == Rational(1));
  // x lifts to n
  const FiniteSeqQ lin = nabla(PolySeqQ::monomial(1));
  for (int n = 0; n < lin.support_bound(); ++n)
    CHECK(lin.at(n) == scalar_from_int<Rational>(n));
}

TEST_CASE("lambda_inverse and its inverse") {
  CHECK(lambda_inverse(FiniteSeqQ::indicator(0)) == PolySeqQ::monomial(0));
  // indicator at 2 -> x^2/2
  const PolySeqQ p = lambda_inverse(FiniteSeqQ::indicator(2));
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2) == Rational(1, 2));

  RngStream rng(11, 0);
  for (int rep = 0; rep < 40; ++rep) {
    FiniteSeqQ g;
    const int sup = 1 + int(rng.uniform() * 10);
    for (int n = 0; n < sup; ++n)
      g.set(n, make_rational(long(rng.uniform() * 19) - 9, 1 + long(rng.uniform() * 6)));
    CHECK(nabla_pe(lambda_inverse(g)) == g);
  }
}

TEST_CASE("generator images of small polynomials") {
  const Rational beta(27, 10);
  CHECK(G_beta_poly(beta, PolySeqQ::monomial(0)).degree() == -1);
  const PolySeqQ gx = G_beta_poly(beta, PolySeqQ::monomial(1));
  CHECK(gx.degree() == 0);
  CHECK(gx.coeff(0) == beta);
  const PolySeqQ gx2 = G_beta_poly(beta, PolySeqQ::monomial(2));
  CHECK(gx2.coeff(1) == Rational(2) + Rational(2) * beta);

  CHECK(D_poly(PolySeqQ::monomial(0)).degree() == -1);
  const PolySeqQ dx2 = D_poly(PolySeqQ::monomial(2));
  CHECK(dx2.coeff(2) == Rational(-2));
}

TEST_CASE("difference operators at indicators") {
  // bbG at the indicator of 0, beta = 1: -1 at 0, +1 at 1 (column of the matrix)
  const FiniteSeqQ img = bbG_apply(Rational(1), FiniteSeqQ::indicator(0));
  CHECK(img.at(0) == Rational(-1));
  CHECK(img.at(1) == Rational(1));
  CHECK(img.at(2) == Rational(0));

  // Markov generators kill constants on the interior
  FiniteSeqQ ones;
  for (int n = 0; n < 10; ++n) ones.set(n, Rational(1));
  const FiniteSeqQ gi = bbG_apply(Rational(1, 2), ones);
  for (int n = 0; n < 9; ++n) CHECK(gi.at(n) == Rational(0));
  const FiniteSeqQ di = bbD_apply(ones);
  for (int n = 0; n < 10; ++n) CHECK(di.at(n) == Rational(0));

  const FiniteSeqQ d0 = bbD_apply(FiniteSeqQ::indicator(0));
  CHECK(d0.at(0) == Rational(0));
  CHECK(d0.at(1) == Rational(1));
}

TEST_CASE("generator gateways are exact on monomials") {
  for (const Rational& beta : {Rational(0), Rational(1, 2), Rational(1), Rational(27, 10)}) {
    for (int d = 0; d <= 12; ++d) {
      const PolySeqQ p = PolySeqQ::monomial(d);
      const FiniteSeqQ np = nabla(p);
      const int upto = d + kNablaGuard - 2;
      CHECK(equal_prefix(bbG_apply(beta, np), nabla(G_beta_poly(beta, p)), upto));
      CHECK(equal_prefix(bbD_apply(np), nabla(D_poly(p)), upto));
      for (const Rational& sigma : {Rational(1, 2), Rational(1), Rational(3)}) {
        CHECK(equal_prefix(bbL_apply(beta, sigma, np),
                           nabla(laguerre_generator_poly(beta, sigma, p)), upto));
      }
    }
  }
}

TEST_CASE("laguerre generator eigen-direction at k = 1") {
  // (beta - x) maps to -(beta - x) at sigma = 1
  const Rational beta(5, 2);
  PolySeqQ p;
  p.coeffs = {beta, Rational(-1)};
  const PolySeqQ img = laguerre_generator_poly(beta, Rational(1), p);
  CHECK(img.coeff(0) == -beta);
  CHECK(img.coeff(1) == Rational(1));
}

TEST_CASE("two-parameter family Markovianity defect") {
  FiniteSeqQ ones;
  for (int n = 0; n < 16; ++n) ones.set(n, Rational(1));
  const Rational beta(2), alpha(3);
  const FiniteSeqQ img = bbG_alpha_apply(beta, alpha, ones);
  for (int n = 0; n < 15; ++n) {
    const Rational want = (alpha - Rational(1)) * (alpha - Rational(1)) *
                              scalar_from_int<Rational>(n) +
                          beta * (Rational(1) - alpha);
    CHECK(img.at(n) == want);
  }
}

TEST_CASE("build_generator rows and truncation flags") {
  const TridiagGenerator bes = build_generator(GeneratorKind::bessel_bd, 1.0, 0.0, 6);
  CHECK(bes.rows[2].sub == 2.0);
  CHECK(bes.rows[2].diag == -5.0);
  CHECK(bes.rows[2].super == 3.0);
  const TridiagGenerator lag = build_generator(GeneratorKind::laguerre_bd, 1.0, 1.0, 6);
  CHECK(lag.rows[2].sub == 4.0);
  CHECK(lag.rows[2].diag == -7.0);
  CHECK(lag.rows[2].super == 3.0);
  for (int m = 0; m < 6; ++m) {
    CHECK(bes.rows[static_cast<size_t>(m)].sub + bes.rows[static_cast<size_t>(m)].diag + bes.rows[static_cast<size_t>(m)].super ==
          doctest::Approx(0.0));
  }
  const TridiagGenerator absorbing =
      build_generator(GeneratorKind::bessel_bd, 1.0, 0.0, 6, true);
  CHECK(absorbing.rows[5].super == 0.0);
  CHECK(absorbing.rows[5].sub + absorbing.rows[5].diag + absorbing.rows[5].super < 0.0);

  CHECK_THROWS_AS(build_generator(GeneratorKind::bessel_bd, 1.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_generator(GeneratorKind::laguerre_bd, 1.0, 0.0, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_generator(GeneratorKind::bessel_bd, -1.0, 0.0, 8), std::invalid_argument);
}

TEST_CASE("double specialization matches the rational path") {
  RngStream rng(3, 1);
  for (int rep = 0; rep < 10; ++rep) {
    PolySeqD pd;
    PolySeqQ pq;
    const int deg = 1 + int(rng.uniform() * 8);
    for (int i = 0; i <= deg; ++i) {
      const double c = double(long(rng.uniform() * 9) - 4);
      pd.coeffs.push_back(c);
      pq.coeffs.push_back(Rational(c));
    }
    pd.trim();
    pq.trim();
    const FiniteSeqD nd = nabla(pd);
    const FiniteSeqQ nq = nabla(pq);
    for (int n = 0; n < nd.support_bound(); ++n)
      CHECK(nd.at(n) == doctest::Approx(qd(nq.at(n))).epsilon(1e-12));
  }
}
