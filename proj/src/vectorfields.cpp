#include "prelie/vectorfields.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "prelie/errors.hpp"
#include "prelie/group.hpp"

namespace prelie {

namespace {

int total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

void require_same_shape(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("vector field dimensions differ");
  if (a.degree_cap() != b.degree_cap())
    throw std::invalid_argument("vector field degree caps differ");
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Polynomial::Polynomial(int dim, int degree_cap) : dim_(dim), cap_(degree_cap) {
  if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  if (degree_cap < 0) throw std::invalid_argument("degree cap must be >= 0");
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != dim_)
    throw std::invalid_argument("monomial arity mismatch");
  if (c == 0 || total_degree(m) > cap_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  // Terms are graded, so the last one carries the degree.
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

int Polynomial::valuation() const {
  return terms_.empty() ? std::numeric_limits<int>::max()
                        : total_degree(terms_.begin()->first);
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(dim_, cap_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    out.add_term(d, c * m[var]);
  }
  return out;
}

Polynomial Polynomial::multiplied(const Polynomial& other) const {
  Polynomial out(dim_, cap_);
  for (const auto& [m1, c1] : terms_) {
    const int d1 = total_degree(m1);
    for (const auto& [m2, c2] : other.terms_) {
      if (d1 + total_degree(m2) > cap_) break;  // graded order
      Monomial m = m1;
      for (int i = 0; i < dim_; ++i) m[i] += m2[i];
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw std::invalid_argument("evaluation point arity mismatch");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < dim_; ++i)
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::recapped(int new_cap) const {
  Polynomial out(dim_, new_cap);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

PolyVectorField::PolyVectorField(int dim, int degree_cap)
    : dim_(dim), cap_(degree_cap), comps_(dim, Polynomial(dim, degree_cap)) {
  if (dim < 1) throw std::invalid_argument("vector field dimension must be >= 1");
}

void PolyVectorField::add_term(int i, const Monomial& m, const Rational& c) {
  comps_[i].add_term(m, c);
}

bool PolyVectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

int PolyVectorField::degree() const {
  int d = -1;
  for (const auto& p : comps_) d = std::max(d, p.degree());
  return d;
}

int PolyVectorField::valuation() const {
  int v = std::numeric_limits<int>::max();
  for (const auto& p : comps_) v = std::min(v, p.valuation());
  return v;
}

PolyVectorField PolyVectorField::recapped(int new_cap) const {
  PolyVectorField out(dim_, new_cap);
  for (int i = 0; i < dim_; ++i)
    for (const auto& [m, c] : comps_[i].terms()) out.add_term(i, m, c);
  return out;
}

PolyVectorField vf_prelie(const PolyVectorField& F, const PolyVectorField& G) {
  require_same_shape(F, G);
  const int d = F.dim();
  PolyVectorField out(d, F.degree_cap());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (G.component(j).is_zero()) continue;
      Polynomial dj = F.component(i).derivative(j);
      if (dj.is_zero()) continue;
      Polynomial prod = dj.multiplied(G.component(j));
      for (const auto& [m, c] : prod.terms()) out.add_term(i, m, c);
    }
  }
  return out;
}

PolyVectorField brace_eval(const TreeTable& table, TreeId t,
                           const PolyVectorField& F) {
  if (t == table.leaf()) return F;
  const auto& ch = table.children(t);
  const int k = static_cast<int>(ch.size());
  const int d = F.dim();

  std::vector<PolyVectorField> sub;
  sub.reserve(k);
  for (TreeId c : ch) sub.push_back(brace_eval(table, c, F));

  PolyVectorField out(d, F.degree_cap());
  std::vector<int> idx(k, 0);
  for (int i = 0; i < d; ++i) {
    // Odometer over derivative directions (j_1..j_k).
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      Polynomial term = F.component(i);
      for (int a = 0; a < k && !term.is_zero(); ++a)
        term = term.derivative(idx[a]);
      for (int a = 0; a < k && !term.is_zero(); ++a)
        term = term.multiplied(sub[a].component(idx[a]));
      for (const auto& [m, c] : term.terms()) out.add_term(i, m, c);

      int pos = k - 1;
      while (pos >= 0 && idx[pos] == d - 1) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
  return out;
}

PolyVectorField apply_series(const TreeSeries& s, const PolyVectorField& F) {
  if (F.is_zero()) return F;
  if (F.valuation() < 2)
    throw math_error("apply_series: exact mode requires valuation >= 2");
  const TreeTable& tt = s.table();
  const int cap = F.degree_cap();
  if (s.order() < cap - 1)
    throw std::invalid_argument(
        "apply_series: series order must be at least the degree cap minus one");
  PolyVectorField out(F.dim(), cap);
  for (const auto& [t, c] : s.terms()) {
    // An n-node tree contributes valuation >= n + 1.
    if (tt.nodes(t) > cap - 1) break;
    PolyVectorField b = brace_eval(tt, t, F);
    for (int i = 0; i < F.dim(); ++i)
      for (const auto& [m, coeff] : b.component(i).terms())
        out.add_term(i, m, c * coeff);
  }
  return out;
}

FlowJet flow_taylor(const PolyVectorField& F, std::span<const Rational> g0,
                    int terms) {
  if (terms < 1) throw std::invalid_argument("flow_taylor: need at least one term");
  if (static_cast<int>(g0.size()) != F.dim())
    throw std::invalid_argument("flow_taylor: base point arity mismatch");

  // Iterates are computed at a cap wide enough to keep every F^{<-k} exact:
  // deg(F^{<-k}) <= k deg(F) - (k-1).
  const int cap = std::max(1, F.degree()) * terms;
  const PolyVectorField Fw = F.recapped(cap);

  FlowJet jet;
  jet.base.assign(g0.begin(), g0.end());
  jet.coeffs.reserve(terms);
  PolyVectorField iterate = Fw;
  Rational inv_fact(1);
  for (int k = 1; k <= terms; ++k) {
    if (k > 1) {
      iterate = vf_prelie(iterate, Fw);
      inv_fact /= k;
    }
    std::vector<Rational> ck(F.dim());
    for (int i = 0; i < F.dim(); ++i)
      ck[i] = iterate.component(i).evaluate(g0) * inv_fact;
    jet.coeffs.push_back(std::move(ck));
  }
  return jet;
}

PolyVectorField recover_field(const TreeTable& table, const PolyVectorField& G,
                              int degree_cap) {
  if (G.is_zero()) return PolyVectorField(G.dim(), degree_cap);
  if (G.valuation() < 2)
    throw math_error("recover_field: valuation >= 2 required");
  if (degree_cap < 2 || table.max_order() < degree_cap - 1)
    throw std::invalid_argument("recover_field: tree table too small for the cap");
  TreeSeries log = log_star(table, degree_cap - 1);
  return apply_series(log, G.recapped(degree_cap));
}

// ---------------------------------------------------------------------------
// Expression parsing.

namespace {

class FieldParser {
 public:
  FieldParser(std::string_view text, int dim, int cap)
      : text_(text), dim_(dim), cap_(cap) {}

  Polynomial parse_component() {
    Polynomial p = parse_expr();
    skip_ws();
    if (!eof() && peek() != ';')
      throw parse_error("unexpected character in field expression", pos_);
    return p;
  }

  bool at_separator() {
    skip_ws();
    return !eof() && peek() == ';';
  }
  void consume_separator() { ++pos_; }
  bool eof() const { return pos_ >= text_.size(); }
  std::size_t position() const { return pos_; }

 private:
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  Polynomial parse_expr() {
    skip_ws();
    bool negate = false;
    if (!eof() && peek() == '-') {
      negate = true;
      ++pos_;
    }
    Polynomial acc = parse_term();
    if (negate) acc = negated(acc);
    while (true) {
      skip_ws();
      if (eof() || (peek() != '+' && peek() != '-')) break;
      const char op = peek();
      ++pos_;
      Polynomial t = parse_term();
      if (op == '-') t = negated(t);
      for (const auto& [m, c] : t.terms()) acc.add_term(m, c);
    }
    return acc;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (true) {
      skip_ws();
      if (eof() || peek() != '*') break;
      ++pos_;
      acc = acc.multiplied(parse_factor());
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_atom();
    skip_ws();
    if (!eof() && peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      long exp = 0;
      std::size_t digits = 0;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        exp = exp * 10 + (peek() - '0');
        ++pos_;
        ++digits;
        if (exp > 1000) throw parse_error("exponent too large", start);
      }
      if (digits == 0)
        throw parse_error("expected a non-negative integer exponent", pos_);
      Polynomial pow(dim_, cap_);
      pow.add_term(Monomial(dim_, 0), 1);
      for (long e = 0; e < exp; ++e) pow = pow.multiplied(base);
      return pow;
    }
    return base;
  }

  Polynomial parse_atom() {
    skip_ws();
    if (eof()) throw parse_error("unexpected end of field expression", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial e = parse_expr();
      skip_ws();
      if (eof() || peek() != ')')
        throw parse_error("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_variable();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  Polynomial parse_literal() {
    const std::size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!eof() && peek() == '/') {
      ++pos_;
      if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw parse_error("expected denominator digits", pos_);
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    Rational q = parse_rational(text_.substr(start, pos_ - start));
    Polynomial p(dim_, cap_);
    p.add_term(Monomial(dim_, 0), q);
    return p;
  }

  Polynomial parse_variable() {
    const std::size_t start = pos_;
    int var = -1;
    const char c = peek();
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (c == 'x' && !eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        long n = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
          n = n * 10 + (peek() - '0');
          ++pos_;
          if (n > 10000) throw parse_error("variable index too large", start);
        }
        var = static_cast<int>(n) - 1;
      } else {
        if (dim_ > 3)
          throw parse_error("aliases x,y,z are only available for dim <= 3", start);
        var = c - 'x';
      }
    } else {
      throw parse_error("unknown variable", start);
    }
    if (var < 0 || var >= dim_)
      throw parse_error("variable index out of range for dimension " +
                            std::to_string(dim_),
                        start);
    Monomial m(dim_, 0);
    m[var] = 1;
    Polynomial p(dim_, cap_);
    p.add_term(m, 1);
    return p;
  }

  Polynomial negated(const Polynomial& p) {
    Polynomial out(dim_, cap_);
    for (const auto& [m, c] : p.terms()) out.add_term(m, -c);
    return out;
  }

  std::string_view text_;
  int dim_;
  int cap_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyVectorField parse_field(std::string_view text, int dim, int degree_cap) {
  PolyVectorField out(dim, degree_cap);
  FieldParser parser(text, dim, degree_cap);
  for (int i = 0; i < dim; ++i) {
    Polynomial p = parser.parse_component();
    for (const auto& [m, c] : p.terms()) out.add_term(i, m, c);
    if (i + 1 < dim) {
      if (!parser.at_separator())
        throw parse_error("expected ';' between components", parser.position());
      parser.consume_separator();
    }
  }
  if (parser.at_separator())
    throw parse_error("too many components for dimension " + std::to_string(dim),
                      parser.position());
  if (!parser.eof())
    throw parse_error("trailing characters in field expression", parser.position());
  return out;
}

std::vector<Rational> parse_point(std::string_view text, int dim) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(
        start, comma == std::string_view::npos ? text.size() - start : comma - start);
    // trim
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front())))
      piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())))
      piece.remove_suffix(1);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(out.size()) != dim)
    throw parse_error("point has " + std::to_string(out.size()) +
                          " coordinates, expected " + std::to_string(dim),
                      0);
  return out;
}

}  // namespace prelie
