#pragma once

#include <limits>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "prelie/rational.hpp"
#include "prelie/series.hpp"

namespace prelie {

// One exponent per variable.
using Monomial = std::vector<int>;

// Graded order: total degree first, then exponents lexicographically.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Multivariate polynomial with exact rational coefficients, truncated at a
// total degree cap. Terms iterate in (total degree, exponents) order.
class Polynomial {
 public:
  Polynomial(int dim, int degree_cap);

  int dim() const { return dim_; }
  int degree_cap() const { return cap_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational, MonomialOrder>& terms() const {
    return terms_;
  }

  // Accumulates one term; monomials above the cap are dropped.
  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  int degree() const;     // -1 for the zero polynomial
  int valuation() const;  // INT_MAX for the zero polynomial

  Polynomial derivative(int var) const;
  Polynomial multiplied(const Polynomial& other) const;  // truncated at cap
  Rational evaluate(std::span<const Rational> point) const;
  Polynomial recapped(int new_cap) const;

  bool operator==(const Polynomial& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

 private:
  int dim_;
  int cap_;
  std::map<Monomial, Rational, MonomialOrder> terms_;
};

// A polynomial vector field sum_i F_i d/dx_i on affine d-space, all
// components truncated at one total-degree cap. The valuation (minimum total
// degree over all components) is the filtration grade: exact series actions
// require valuation >= 2.
class PolyVectorField {
 public:
  PolyVectorField(int dim, int degree_cap);

  int dim() const { return dim_; }
  int degree_cap() const { return cap_; }
  const Polynomial& component(int i) const { return comps_[i]; }
  void add_term(int i, const Monomial& m, const Rational& c);

  bool is_zero() const;
  int degree() const;     // max over components, -1 if zero
  int valuation() const;  // min over components, INT_MAX if zero
  PolyVectorField recapped(int new_cap) const;

  bool operator==(const PolyVectorField& o) const {
    return dim_ == o.dim_ && comps_ == o.comps_;
  }

 private:
  int dim_;
  int cap_;
  std::vector<Polynomial> comps_;
};

// The pre-Lie product on vector fields: component i of F <- G is
// sum_j G_j * dF_i/dx_j, truncated at the common cap.
PolyVectorField vf_prelie(const PolyVectorField& F, const PolyVectorField& G);

// Elementary differential of a rooted tree at F: with root subtrees
// t_1..t_k, component i is sum over (j_1..j_k) of
// (prod_a brace_eval(t_a, F)_{j_a}) * d^k F_i / dx_{j_1}..dx_{j_k}.
PolyVectorField brace_eval(const TreeTable& table, TreeId t,
                           const PolyVectorField& F);

// sum_t s(t) * brace_eval(t, F), truncated at the field's cap. Exact mode:
// requires valuation(F) >= 2, so only trees with at most cap-1 nodes
// contribute, and the series order must cover them.
PolyVectorField apply_series(const TreeSeries& s, const PolyVectorField& F);

// Taylor jet of the flow of F through g0: g(t) = g0 + sum c_k t^k with
// c_k = F^{<-k}(g0) / k!.
struct FlowJet {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> coeffs;  // coeffs[k-1] = c_k
};

FlowJet flow_taylor(const PolyVectorField& F, std::span<const Rational> g0, int terms);

// Backward solve: the field whose time-one flow displacement is G,
// computed as apply_series(log*, G) at degree `degree_cap`.
PolyVectorField recover_field(const TreeTable& table, const PolyVectorField& G,
                              int degree_cap);

// Expression grammar shared with the command line. Components are separated
// by ';'; each component follows
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | var | '(' expr ')'
// with variables x1..xd (aliases x, y, z for d <= 3) and rational literals
// like 3 or 3/2. The leading '-' is a convenience on top of the base grammar.
PolyVectorField parse_field(std::string_view text, int dim, int degree_cap);

// Comma-separated rationals, exactly `dim` of them.
std::vector<Rational> parse_point(std::string_view text, int dim);

}  // namespace prelie
