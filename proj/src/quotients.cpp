#include "prelie/quotients.hpp"

#include <stdexcept>

#include "prelie/errors.hpp"

namespace prelie {

namespace {

// Truncated product of series without constant term (indices are degrees).
PowerSeriesComp ps_mul(const PowerSeriesComp& p, const PowerSeriesComp& q) {
  PowerSeriesComp out(p.order);
  for (int i = 1; i <= p.order; ++i) {
    if (p.coeff(i) == 0) continue;
    for (int j = 1; i + j <= p.order; ++j) {
      if (q.coeff(j) == 0) continue;
      out.coeff(i + j) += p.coeff(i) * q.coeff(j);
    }
  }
  return out;
}

void require_same_order(int a, int b) {
  if (a != b) throw std::invalid_argument("power series orders differ");
}

}  // namespace

PowerSeriesComp phi(const TreeSeries& x) {
  const TreeTable& tt = x.table();
  PowerSeriesComp out(x.order());
  for (const auto& [t, c] : x.terms())
    if (tt.is_linear(t)) out.coeff(tt.nodes(t)) = c;
  return out;
}

PowerSeriesComp ps_compose(const PowerSeriesComp& g, const PowerSeriesComp& f) {
  require_same_order(g.order, f.order);
  PowerSeriesComp out(g.order);
  PowerSeriesComp fpow = f;  // f^k, truncated
  for (int k = 1; k <= g.order; ++k) {
    if (k > 1) fpow = ps_mul(fpow, f);
    if (g.coeff(k) == 0) continue;
    for (int n = k; n <= g.order; ++n) out.coeff(n) += g.coeff(k) * fpow.coeff(n);
  }
  return out;
}

PowerSeriesComp ps_invert(const PowerSeriesComp& f) {
  if (f.order < 1 || f.coeff(1) == 0)
    throw math_error("power series is not invertible: linear coefficient is zero");
  PowerSeriesComp g(f.order);
  g.coeff(1) = 1 / f.coeff(1);
  Rational a1n = f.coeff(1);
  for (int n = 2; n <= f.order; ++n) {
    a1n *= f.coeff(1);
    // With g set below grade n, [x^n](g o f) must vanish.
    PowerSeriesComp h = ps_compose(g, f);
    g.coeff(n) = -h.coeff(n) / a1n;
  }
  return g;
}

MuElement psi(const TreeSeries& x) {
  const TreeTable& tt = x.table();
  MuElement out;
  out.lambda = x.coefficient(tt.leaf());
  out.f.assign(x.order(), Rational(0));
  for (const auto& [t, c] : x.terms())
    if (tt.is_corolla(t)) out.f[tt.nodes(t) - 1] = c;
  if (out.lambda == 0) {
    out.invertible = false;  // raw pair, f_0 = 0
    return out;
  }
  for (auto& fm : out.f) fm /= out.lambda;
  return out;
}

MuElement mu_compose(const MuElement& a, const MuElement& b) {
  if (!a.invertible || !b.invertible)
    throw math_error("mu product requires non-zero lambdas");
  require_same_order(static_cast<int>(a.f.size()), static_cast<int>(b.f.size()));
  const int n = static_cast<int>(a.f.size());
  MuElement out;
  out.lambda = a.lambda * b.lambda;
  out.f.assign(n, Rational(0));
  Rational theta_pow(1);
  std::vector<Rational> fa(n);  // f_a(theta x)
  for (int m = 0; m < n; ++m) {
    fa[m] = a.f[m] * theta_pow;
    theta_pow *= b.lambda;
  }
  for (int i = 0; i < n; ++i) {
    if (fa[i] == 0) continue;
    for (int j = 0; i + j < n; ++j) out.f[i + j] += fa[i] * b.f[j];
  }
  return out;
}

MuElement mu_invert(const MuElement& a) {
  if (!a.invertible || a.lambda == 0)
    throw math_error("mu inverse requires a non-zero lambda");
  const int n = static_cast<int>(a.f.size());
  MuElement out;
  out.lambda = 1 / a.lambda;
  out.f.assign(n, Rational(0));
  // g = f(x/lambda), then out.f = 1/g by the standard reciprocal recursion.
  std::vector<Rational> g(n);
  Rational pow(1);
  for (int m = 0; m < n; ++m) {
    g[m] = a.f[m] * pow;
    pow /= a.lambda;
  }
  if (n > 0) out.f[0] = 1;
  for (int m = 1; m < n; ++m) {
    Rational s(0);
    for (int j = 1; j <= m; ++j) s += g[j] * out.f[m - j];
    out.f[m] = -s;
  }
  return out;
}

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: n must be >= 0");
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s(0);
    for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[k];
    b[m] = -s / Rational(m + 1);
  }
  return b[n];
}

}  // namespace prelie
