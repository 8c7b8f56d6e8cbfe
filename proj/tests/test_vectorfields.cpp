#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include "prelie/errors.hpp"
#include "prelie/group.hpp"
#include "prelie/vectorfields.hpp"

using namespace prelie;

namespace {

PolyVectorField field1d(const char* expr, int cap) {
  return parse_field(expr, 1, cap);
}

PolyVectorField random_field(int dim, int cap, int min_val, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> keep(0, 2);
  PolyVectorField F(dim, cap);
  std::vector<int> e(dim, 0);
  // Walk every exponent vector with total degree <= cap.
  std::function<void(int, int)> walk = [&](int pos, int used) {
    if (pos == dim) {
      if (used >= min_val && keep(rng) == 0) {
        int v = num(rng);
        if (v != 0)
          for (int i = 0; i < dim; ++i) F.add_term(i, e, make_rational(num(rng), den(rng)));
      }
      return;
    }
    for (int d = 0; used + d <= cap; ++d) {
      e[pos] = d;
      walk(pos + 1, used + d);
    }
    e[pos] = 0;
  };
  walk(0, 0);
  return F;
}

// Truncated univariate series in t, for the jet checks.
using TSeries = std::vector<Rational>;  // index = power of t

TSeries ts_mul(const TSeries& a, const TSeries& b) {
  TSeries out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Evaluate one polynomial at a vector of t-series.
TSeries poly_at_jet(const Polynomial& p, const std::vector<TSeries>& g) {
  const std::size_t len = g[0].size();
  TSeries acc(len, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    TSeries term(len, Rational(0));
    term[0] = c;
    for (std::size_t j = 0; j < m.size(); ++j)
      for (int e = 0; e < m[j]; ++e) term = ts_mul(term, g[j]);
    for (std::size_t k = 0; k < len; ++k) acc[k] += term[k];
  }
  return acc;
}

std::vector<TSeries> jet_series(const FlowJet& jet) {
  const std::size_t dim = jet.base.size();
  const std::size_t K = jet.coeffs.size();
  std::vector<TSeries> g(dim, TSeries(K + 1, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i) {
    g[i][0] = jet.base[i];
    for (std::size_t k = 0; k < K; ++k) g[i][k + 1] = jet.coeffs[k][i];
  }
  return g;
}

// Pushforward of F under y = M x + b: x -> M^{-1} F(M x + b).
PolyVectorField affine_transform(const PolyVectorField& F,
                                 const std::vector<std::vector<Rational>>& Minv,
                                 const std::vector<std::vector<Rational>>& M,
                                 const std::vector<Rational>& b) {
  const int d = F.dim();
  // images of the variables: (Mx + b)_j
  std::vector<Polynomial> img;
  for (int j = 0; j < d; ++j) {
    Polynomial p(d, F.degree_cap());
    Monomial c0(d, 0);
    p.add_term(c0, b[j]);
    for (int k = 0; k < d; ++k) {
      Monomial m(d, 0);
      m[k] = 1;
      p.add_term(m, M[j][k]);
    }
    img.push_back(p);
  }
  auto substituted = [&](const Polynomial& p) {
    Polynomial out(d, F.degree_cap());
    for (const auto& [m, c] : p.terms()) {
      Polynomial term(d, F.degree_cap());
      term.add_term(Monomial(d, 0), c);
      for (int j = 0; j < d; ++j)
        for (int e = 0; e < m[j]; ++e) term = term.multiplied(img[j]);
      for (const auto& [mm, cc] : term.terms()) out.add_term(mm, cc);
    }
    return out;
  };
  PolyVectorField out(d, F.degree_cap());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (Minv[i][j] == 0) continue;
      Polynomial sub = substituted(F.component(j));
      for (const auto& [m, c] : sub.terms()) out.add_term(i, m, Minv[i][j] * c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("pre-Lie product on fields") {
  PolyVectorField F = field1d("x^2", 4);
  PolyVectorField G = field1d("x", 4);
  PolyVectorField R = vf_prelie(F, G);
  CHECK(R == field1d("2*x^2", 4));

  // 2D shear kills itself.
  PolyVectorField S = parse_field("y; 0", 2, 3);
  CHECK(vf_prelie(S, S).is_zero());

  // F = x^2 d/dx iterates to k! x^{k+1}.
  PolyVectorField it = field1d("x^2", 8);
  Integer fact(1);
  for (int k = 2; k <= 6; ++k) {
    it = vf_prelie(it, field1d("x^2", 8));
    fact *= k;
    Monomial m{k + 1};
    CHECK(it.component(0).coefficient(m) == Rational(fact));
    CHECK(it.component(0).terms().size() == 1);
  }

  CHECK_THROWS_AS(vf_prelie(F, parse_field("x;y", 2, 4)), std::invalid_argument);
}

TEST_CASE("elementary differentials") {
  TreeTable tt(6);
  PolyVectorField F = field1d("x^2", 6);

  CHECK(brace_eval(tt, tt.leaf(), F) == F);
  CHECK(brace_eval(tt, tt.chain(2), F) == vf_prelie(F, F));
  CHECK(brace_eval(tt, tt.corolla(3), F) == field1d("2*x^4", 6));
  CHECK(brace_eval(tt, tt.chain(3), F) == field1d("4*x^4", 6));

  // chain3 + corolla3 reconstitutes the third right iterate.
  PolyVectorField sum(1, 6);
  for (const auto& b : {brace_eval(tt, tt.chain(3), F), brace_eval(tt, tt.corolla(3), F)})
    for (const auto& [m, c] : b.component(0).terms()) sum.add_term(0, m, c);
  CHECK(sum == vf_prelie(vf_prelie(F, F), F));
}

TEST_CASE("brace respects the graft product") {
  TreeTable tt(6);
  std::mt19937 rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    PolyVectorField F = random_field(dim, 3, 1, rng).recapped(7);
    for (int nt = 1; nt + 1 <= 5; ++nt)
      for (int ns = 1; nt + ns <= 5; ++ns)
        for (TreeId t : tt.trees_of_order(nt))
          for (TreeId s : tt.trees_of_order(ns)) {
            TreeSeries ts(tt, 6);
            ts.set_coefficient(t, 1);
            TreeSeries ss(tt, 6);
            ss.set_coefficient(s, 1);
            TreeSeries prod = graft_product(ts, ss);
            PolyVectorField lhs(dim, 7);
            for (const auto& [u, c] : prod.terms()) {
              PolyVectorField bu = brace_eval(tt, u, F);
              for (int i = 0; i < dim; ++i)
                for (const auto& [m, cc] : bu.component(i).terms())
                  lhs.add_term(i, m, c * cc);
            }
            CHECK(lhs == vf_prelie(brace_eval(tt, t, F), brace_eval(tt, s, F)));
          }
  }
}

TEST_CASE("apply_series") {
  TreeTable tt(7);
  PolyVectorField F = field1d("x^2", 6);

  CHECK(apply_series(unit_v(tt, 6), F) == F);

  // exp* applied to x^2 d/dx sums the geometric tail.
  PolyVectorField e = apply_series(exp_star(tt, 5), F);
  PolyVectorField expect(1, 6);
  for (int k = 1; k <= 5; ++k) expect.add_term(0, Monomial{k + 1}, 1);
  CHECK(e == expect);

  PolyVectorField linear = field1d("x", 6);
  CHECK_THROWS_AS(apply_series(exp_star(tt, 5), linear), math_error);
  CHECK_THROWS_AS(apply_series(exp_star(tt, 3), F), std::invalid_argument);
}

TEST_CASE("exp*/log* round trip on fields") {
  TreeTable tt(6);
  std::mt19937 rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const int cap = 4 + static_cast<int>(rng() % 3);  // 4..6
    PolyVectorField F = random_field(dim, cap, 2, rng);
    PolyVectorField G = apply_series(exp_star(tt, cap - 1), F);
    PolyVectorField back = apply_series(log_star(tt, cap - 1), G);
    CHECK(back == F);
  }
}

TEST_CASE("two evaluation routes for exp* agree") {
  // Brace evaluation of the series equals the direct sum of right iterates.
  TreeTable tt(7);
  std::mt19937 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 2);
    const int cap = 5 + static_cast<int>(rng() % 2);
    PolyVectorField F = random_field(dim, cap, 2, rng);
    if (F.is_zero()) continue;
    PolyVectorField via_braces = apply_series(exp_star(tt, cap - 1), F);

    PolyVectorField acc(dim, cap);
    PolyVectorField iterate = F;
    Rational inv_fact(1);
    for (int k = 1; k <= cap - 1; ++k) {
      if (k > 1) {
        iterate = vf_prelie(iterate, F);
        inv_fact /= k;
      }
      for (int i = 0; i < dim; ++i)
        for (const auto& [m, c] : iterate.component(i).terms())
          acc.add_term(i, m, inv_fact * c);
    }
    CHECK(via_braces == acc);
  }
}

TEST_CASE("flow jets") {
  // Constant field: c_1 only.
  {
    FlowJet jet = flow_taylor(field1d("3", 0), std::vector<Rational>{Rational(0)}, 3);
    CHECK(jet.coeffs[0][0] == 3);
    CHECK(jet.coeffs[1][0] == 0);
    CHECK(jet.coeffs[2][0] == 0);
  }
  // dg/dt = g^2 from 1: every coefficient is 1 (g = 1/(1-t)).
  {
    FlowJet jet = flow_taylor(field1d("x^2", 2), std::vector<Rational>{Rational(1)}, 10);
    for (const auto& ck : jet.coeffs) CHECK(ck[0] == 1);
  }
  // Rotation field: c_k = A^k g0 / k!.
  {
    PolyVectorField F = parse_field("y; -x", 2, 1);
    std::vector<Rational> g0{Rational(1), Rational(0)};
    FlowJet jet = flow_taylor(F, g0, 12);
    std::vector<Rational> v = g0;
    Rational inv_fact(1);
    for (int k = 1; k <= 12; ++k) {
      v = {v[1], -v[0]};  // apply A
      inv_fact /= k;
      CHECK(jet.coeffs[k - 1][0] == v[0] * inv_fact);
      CHECK(jet.coeffs[k - 1][1] == v[1] * inv_fact);
    }
  }
}

TEST_CASE("flow lemma holds order by order") {
  // d/dt G(g(t)) = (G <- F)(g(t)) on truncated jets.
  std::mt19937 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 2);
    PolyVectorField F = random_field(dim, 3, 0, rng);
    PolyVectorField G = random_field(dim, 3, 0, rng);
    const int wide = 8;
    F = F.recapped(wide);
    G = G.recapped(wide);

    std::vector<Rational> g0;
    for (int i = 0; i < dim; ++i) g0.push_back(make_rational(static_cast<int>(rng() % 5) - 2, 1 + rng() % 2));
    const int K = 6;
    FlowJet jet = flow_taylor(F, g0, K);
    auto g = jet_series(jet);

    PolyVectorField H = vf_prelie(G, F);
    for (int i = 0; i < dim; ++i) {
      TSeries lhs = poly_at_jet(G.component(i), g);
      TSeries rhs = poly_at_jet(H.component(i), g);
      // compare d/dt lhs with rhs through t^{K-1}
      for (int k = 0; k + 1 <= K; ++k)
        CHECK(lhs[k + 1] * Rational(k + 1) == rhs[k]);
    }
  }
}

TEST_CASE("pre-Lie product is affine covariant") {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2;
    PolyVectorField F = random_field(d, 3, 0, rng).recapped(8);
    PolyVectorField G = random_field(d, 3, 0, rng).recapped(8);

    // Random invertible rational 2x2 and a shift.
    std::vector<std::vector<Rational>> M, Minv;
    Rational det;
    do {
      M = {{make_rational(static_cast<int>(rng() % 5) - 2), make_rational(static_cast<int>(rng() % 5) - 2)},
           {make_rational(static_cast<int>(rng() % 5) - 2), make_rational(static_cast<int>(rng() % 5) - 2)}};
      det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    } while (det == 0);
    Minv = {{M[1][1] / det, -M[0][1] / det}, {-M[1][0] / det, M[0][0] / det}};
    std::vector<Rational> b{make_rational(static_cast<int>(rng() % 3) - 1),
                            make_rational(static_cast<int>(rng() % 3) - 1)};

    PolyVectorField lhs = affine_transform(vf_prelie(F, G), Minv, M, b);
    PolyVectorField rhs = vf_prelie(affine_transform(F, Minv, M, b),
                                    affine_transform(G, Minv, M, b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("recover_field") {
  TreeTable tt(6);
  PolyVectorField G = field1d("x^2", 3);
  PolyVectorField F3 = recover_field(tt, G, 3);
  CHECK(F3 == field1d("x^2 - x^3", 3));

  // Degree 4, verified by the forward round trip.
  PolyVectorField F4 = recover_field(tt, field1d("x^2", 4), 4);
  CHECK(apply_series(exp_star(tt, 3), F4) == field1d("x^2", 4));
  CHECK(F4 == field1d("x^2 - x^3 + 3/2*x^4", 4));

  // Zero displacement recovers the zero field.
  PolyVectorField zero(1, 4);
  CHECK(recover_field(tt, zero, 4).is_zero());

  CHECK_THROWS_AS(recover_field(tt, field1d("x", 3), 3), math_error);
}

TEST_CASE("expression grammar") {
  PolyVectorField F = parse_field("3/2*x^2 - x + (x - 1/2)*x", 1, 4);
  // 3/2 x^2 - x + x^2 - 1/2 x = 5/2 x^2 - 3/2 x
  PolyVectorField expect(1, 4);
  expect.add_term(0, Monomial{2}, make_rational(5, 2));
  expect.add_term(0, Monomial{1}, make_rational(-3, 2));
  CHECK(F == expect);

  CHECK(parse_field("0-x", 1, 2) == parse_field("-x", 1, 2));
  CHECK(parse_field("x1*x2; x2^3", 2, 4) == parse_field("x*y; y^3", 2, 4));

  CHECK_THROWS_AS(parse_field("", 1, 2), parse_error);
  CHECK_THROWS_AS(parse_field("x+", 1, 2), parse_error);
  CHECK_THROWS_AS(parse_field("x y", 1, 4), parse_error);   // implicit product
  CHECK_THROWS_AS(parse_field("x^-1", 1, 4), parse_error);  // negative exponent
  CHECK_THROWS_AS(parse_field("w", 1, 4), parse_error);
  CHECK_THROWS_AS(parse_field("y", 1, 4), parse_error);     // out of range
  CHECK_THROWS_AS(parse_field("x;x", 1, 4), parse_error);   // too many components
  CHECK_THROWS_AS(parse_field("x", 2, 4), parse_error);     // too few components
  CHECK_THROWS_AS(parse_field("(x", 1, 4), parse_error);

  // Error positions point at the offending token.
  try {
    parse_field("x + $", 1, 4);
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.pos == 4);
  }

  CHECK(parse_point("1", 1).at(0) == 1);
  auto pt = parse_point("1/2, -3", 2);
  CHECK(pt[0] == make_rational(1, 2));
  CHECK(pt[1] == -3);
  CHECK_THROWS_AS(parse_point("1,2", 3), parse_error);
  CHECK_THROWS_AS(parse_point("1,x", 2), parse_error);
}
