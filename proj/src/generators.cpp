#include "gateway/generators.hpp"

namespace gateway {

TridiagGenerator build_generator(GeneratorKind kind, double beta, double sigma, int size,
                                 bool absorbing_tail) {
  if (size < 2) throw std::invalid_argument("build_generator: size must be >= 2");
  if (!(beta >= 0.0)) throw std::invalid_argument("build_generator: beta must be >= 0");
  if (kind == GeneratorKind::laguerre_bd && !(sigma > 0.0))
    throw std::invalid_argument("build_generator: laguerre_bd requires sigma > 0");

  TridiagGenerator g;
  g.kind = kind;
  g.beta = beta;
  g.sigma = kind == GeneratorKind::laguerre_bd ? sigma : 0.0;
  g.size = size;
  g.absorbing_tail = absorbing_tail;
  g.rows.resize(static_cast<size_t>(size));
  for (int m = 0; m < size; ++m) {
    const double birth = g.birth_rate(m);
    const double death = g.death_rate(m);
    auto& row = g.rows[static_cast<size_t>(m)];
    row.sub = m > 0 ? death : 0.0;
    row.super = birth;
    row.diag = -(birth + death);
  }
  // last row: the (N-1 -> N) birth term cannot be represented
  auto& last = g.rows[static_cast<size_t>(size - 1)];
  if (!absorbing_tail) last.diag += last.super;  // reflect: keep the row conservative
  last.super = 0.0;
  return g;
}

std::vector<double> tridiag_apply(const TridiagGenerator& gen, const std::vector<double>& f) {
  const size_t n = gen.rows.size();
  std::vector<double> out(n, 0.0);
  for (size_t m = 0; m < n; ++m) {
    double v = gen.rows[m].diag * f[m];
    if (m > 0) v += gen.rows[m].sub * f[m - 1];
    if (m + 1 < n) v += gen.rows[m].super * f[m + 1];
    out[m] = v;
  }
  return out;
}

}  // namespace gateway
