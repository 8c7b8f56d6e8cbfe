#pragma once

#include <vector>

#include "prelie/series.hpp"

namespace prelie {

// A truncated series a_1 x + ... + a_N x^N under composition; invertible
// exactly when a_1 != 0. a[i] stores a_{i+1}.
struct PowerSeriesComp {
  int order = 0;
  std::vector<Rational> a;

  explicit PowerSeriesComp(int order_) : order(order_), a(order_, Rational(0)) {}
  Rational& coeff(int n) { return a[n - 1]; }  // n in 1..order
  const Rational& coeff(int n) const { return a[n - 1]; }
  bool operator==(const PowerSeriesComp&) const = default;
};

// An element (lambda, f) of Q* acting on 1 + x Q[[x]] by substitution;
// f holds f_0 .. f_{N-1} with f_0 = 1 whenever lambda != 0. When psi is
// applied to a series with vanishing single-node coefficient the pair is
// flagged non-invertible and f keeps the raw corolla coefficients.
struct MuElement {
  Rational lambda;
  std::vector<Rational> f;
  bool invertible = true;

  bool operator==(const MuElement& o) const {
    return lambda == o.lambda && f == o.f && invertible == o.invertible;
  }
};

// Chain coefficients of x; everything non-linear dies in this quotient.
PowerSeriesComp phi(const TreeSeries& x);

// g after f: (g o f)(x) = g(f(x)), truncated.
PowerSeriesComp ps_compose(const PowerSeriesComp& g, const PowerSeriesComp& f);

// Compositional inverse; requires a_1 != 0 (throws math_error).
PowerSeriesComp ps_invert(const PowerSeriesComp& f);

// lambda = single-node coefficient, f_m = corolla(m+1) coefficient / lambda;
// everything deeper than a corolla dies in this quotient.
MuElement psi(const TreeSeries& x);

// (lambda, f)(theta, g) = (lambda theta, f(theta x) g(x)).
MuElement mu_compose(const MuElement& a, const MuElement& b);

// (lambda, f)^{-1} = (1/lambda, 1/f(x/lambda)).
MuElement mu_invert(const MuElement& a);

// B_n in the convention x/(e^x - 1) = sum B_n x^n / n!, so B_1 = -1/2.
Rational bernoulli(int n);

}  // namespace prelie
