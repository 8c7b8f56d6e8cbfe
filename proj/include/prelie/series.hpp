#pragma once

#include <map>

#include "prelie/rational.hpp"
#include "prelie/trees.hpp"

namespace prelie {

// A truncated series over the rooted-tree basis with exact rational
// coefficients. The grade of a tree is its node count; everything above the
// truncation order is dropped by the arithmetic. Zero coefficients are never
// stored, and terms iterate in (grade, canonical code) order because TreeIds
// are assigned that way.
class TreeSeries {
 public:
  TreeSeries(const TreeTable& table, int order);

  const TreeTable& table() const { return *table_; }
  int order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<TreeId, Rational>& terms() const { return terms_; }

  Rational coefficient(TreeId t) const;

  // Overwrites one coefficient; the tree must fit within the order.
  void set_coefficient(TreeId t, const Rational& c);

  // Accumulates one term, silently dropping trees above the order (the
  // truncation discipline of every product) and erasing cancellations.
  void add_term(TreeId t, const Rational& c);

  TreeSeries truncated(int new_order) const;

  bool operator==(const TreeSeries& other) const {
    return order_ == other.order_ && terms_ == other.terms_;
  }

 private:
  const TreeTable* table_;
  int order_;
  std::map<TreeId, Rational> terms_;
};

// dst += c * src (orders and tables must match).
void add_scaled(TreeSeries& dst, const Rational& c, const TreeSeries& src);

// The generator: coefficient 1 on the single-node tree.
TreeSeries unit_v(const TreeTable& table, int order);

TreeSeries add(const TreeSeries& x, const TreeSeries& y);
TreeSeries scale(const Rational& c, const TreeSeries& x);

// The grafting product extended bilinearly: on basis trees
// t <- s = sum over vertices v of t of graft(t, s, v).
TreeSeries graft_product(const TreeSeries& x, const TreeSeries& y);

// (((v <- v) <- v) ... <- v) with k factors, truncated at `order`.
TreeSeries right_iterate(const TreeTable& table, int k, int order);

// exp* = sum_{k>=1} v^{<-k} / k!, truncated at `order`.
TreeSeries exp_star(const TreeTable& table, int order);

}  // namespace prelie
