#include "prelie/series.hpp"

#include <stdexcept>

namespace prelie {

namespace {

void require_compatible(const TreeSeries& x, const TreeSeries& y) {
  if (&x.table() != &y.table())
    throw std::invalid_argument("series built over different tree tables");
  if (x.order() != y.order())
    throw std::invalid_argument("series truncation orders differ: " +
                                std::to_string(x.order()) + " vs " +
                                std::to_string(y.order()));
}

}  // namespace

TreeSeries::TreeSeries(const TreeTable& table, int order)
    : table_(&table), order_(order) {
  if (order < 1) throw std::invalid_argument("series order must be >= 1");
  if (order > table.max_order())
    throw std::invalid_argument("series order exceeds the tree table order");
}

Rational TreeSeries::coefficient(TreeId t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TreeSeries::set_coefficient(TreeId t, const Rational& c) {
  if (table_->nodes(t) > order_)
    throw std::invalid_argument("tree grade exceeds the series order");
  if (c == 0)
    terms_.erase(t);
  else
    terms_[t] = c;
}

void TreeSeries::add_term(TreeId t, const Rational& c) {
  if (c == 0 || table_->nodes(t) > order_) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TreeSeries TreeSeries::truncated(int new_order) const {
  TreeSeries out(*table_, new_order);
  for (const auto& [t, c] : terms_) out.add_term(t, c);
  return out;
}

void add_scaled(TreeSeries& dst, const Rational& c, const TreeSeries& src) {
  require_compatible(dst, src);
  if (c == 0) return;
  for (const auto& [t, v] : src.terms()) dst.add_term(t, c * v);
}

TreeSeries unit_v(const TreeTable& table, int order) {
  TreeSeries s(table, order);
  s.set_coefficient(table.leaf(), 1);
  return s;
}

TreeSeries add(const TreeSeries& x, const TreeSeries& y) {
  require_compatible(x, y);
  TreeSeries out = x;
  add_scaled(out, 1, y);
  return out;
}

TreeSeries scale(const Rational& c, const TreeSeries& x) {
  TreeSeries out(x.table(), x.order());
  add_scaled(out, c, x);
  return out;
}

TreeSeries graft_product(const TreeSeries& x, const TreeSeries& y) {
  require_compatible(x, y);
  const TreeTable& tt = x.table();
  const int order = x.order();
  TreeSeries out(tt, order);
  for (const auto& [t, ct] : x.terms()) {
    const int nt = tt.nodes(t);
    for (const auto& [s, cs] : y.terms()) {
      if (nt + tt.nodes(s) > order) break;  // terms are sorted by grade
      const Rational c = ct * cs;
      for (int v = 0; v < nt; ++v) out.add_term(tt.graft(t, s, v), c);
    }
  }
  return out;
}

TreeSeries right_iterate(const TreeTable& table, int k, int order) {
  if (k < 1) throw std::invalid_argument("right_iterate: k must be >= 1");
  TreeSeries v = unit_v(table, order);
  TreeSeries it = v;
  for (int i = 2; i <= k; ++i) it = graft_product(it, v);
  return it;
}

TreeSeries exp_star(const TreeTable& table, int order) {
  TreeSeries v = unit_v(table, order);
  TreeSeries iterate = v;
  TreeSeries acc = v;
  Rational inv_fact(1);
  for (int k = 2; k <= order; ++k) {
    iterate = graft_product(iterate, v);
    inv_fact /= k;
    add_scaled(acc, inv_fact, iterate);
  }
  return acc;
}

}  // namespace prelie
