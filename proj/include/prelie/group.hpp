#pragma once

#include "prelie/series.hpp"

namespace prelie {

// The substitution product on tree series: for a basis tree t with m vertices
// and an assignment of a support tree of y to every vertex, each edge of t
// reattaches to any vertex of the tree substituted at its parent; results are
// canonicalized and accumulated. Left-linear in x; right linearity fails.
TreeSeries compose(const TreeSeries& x, const TreeSeries& y);

// Two-sided inverse for `compose`. Requires a non-zero coefficient on the
// single-node tree (throws math_error otherwise). Solves z * y = unit grade
// by grade, then verifies y * z = unit.
TreeSeries invert(const TreeSeries& y);

// The inverse of exp* in the substitution group.
TreeSeries log_star(const TreeTable& table, int order);

// Substitution of y at one vertex of each basis tree of x at a time (operad
// units elsewhere), extended bilinearly. A grade-m tree against a grade-n
// tree lands in grade m + n - 1.
TreeSeries insertion(const TreeSeries& x, const TreeSeries& y);

// insertion(x, y) - insertion(y, x).
TreeSeries lie_bracket(const TreeSeries& x, const TreeSeries& y);

}  // namespace prelie
