#include "prelie/group.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "prelie/errors.hpp"

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

// Substitution of a fixed series y at every vertex of a basis tree, with the
// results memoized per tree. The recursion follows the tree structure: the
// root is replaced by a support tree s of y, and each replaced child subtree
// hangs off any vertex of s. Sub-compositions repeat heavily across the
// basis (and across the grades of a triangular solve), hence the cache.
class GammaCache {
 public:
  explicit GammaCache(const TreeSeries& y)
      : tt_(y.table()), y_(y), order_(y.order()) {}

  const TreeSeries& gamma(TreeId t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    TreeSeries out = compute(t);
    return memo_.emplace(t, std::move(out)).first->second;
  }

 private:
  TreeSeries compute(TreeId t) {
    if (t == tt_.leaf()) return y_;

    const std::vector<TreeId>& ch = tt_.children(t);
    const std::size_t k = ch.size();
    std::vector<const TreeSeries*> sub(k);
    for (std::size_t j = 0; j < k; ++j) sub[j] = &gamma(ch[j]);

    // Lower bound on the grade still to come from children j..k-1.
    std::vector<int> suffix_min(k + 1, 0);
    for (std::size_t j = k; j-- > 0;)
      suffix_min[j] = suffix_min[j + 1] + tt_.nodes(ch[j]);

    TreeSeries out(tt_, order_);
    TreeBuilder b;
    std::vector<TreeId> pick(k);

    for (const auto& [s, cs] : y_.terms()) {
      const int m = tt_.nodes(s);
      if (m + suffix_min[0] > order_) break;

      // Choose one term of every replaced child subtree, within budget.
      std::function<void(std::size_t, int, const Rational&)> choose =
          [&](std::size_t j, int budget, const Rational& coeff) {
            if (j == k) {
              emit(s, m, pick, coeff, b, out);
              return;
            }
            for (const auto& [u, cu] : sub[j]->terms()) {
              const int nu = tt_.nodes(u);
              if (nu + suffix_min[j + 1] > budget) break;
              pick[j] = u;
              choose(j + 1, budget - nu, coeff * cu);
            }
          };
      choose(0, order_ - m, cs);
    }
    return out;
  }

  // Attach the picked subtrees to every tuple of vertices of s.
  void emit(TreeId s, int m, const std::vector<TreeId>& pick,
            const Rational& coeff, TreeBuilder& b, TreeSeries& out) {
    b.clear();
    const int base = tt_.expand(s, b);
    const std::size_t k = pick.size();
    std::vector<int> roots(k);
    for (std::size_t j = 0; j < k; ++j) roots[j] = tt_.expand(pick[j], b);

    std::function<void(std::size_t)> attach = [&](std::size_t j) {
      if (j == k) {
        out.add_term(tt_.canonicalize(b, base), coeff);
        return;
      }
      for (int w = 0; w < m; ++w) {
        b.add_child(base + w, roots[j]);
        attach(j + 1);
        b.pop_child(base + w);
      }
    };
    attach(0);
  }

  const TreeTable& tt_;
  const TreeSeries& y_;
  int order_;
  std::unordered_map<TreeId, TreeSeries> memo_;
};

}  // namespace

TreeSeries compose(const TreeSeries& x, const TreeSeries& y) {
  require_compatible(x, y);
  GammaCache cache(y);
  TreeSeries out(x.table(), x.order());
  for (const auto& [t, c] : x.terms()) add_scaled(out, c, cache.gamma(t));
  return out;
}

TreeSeries invert(const TreeSeries& y) {
  const TreeTable& tt = y.table();
  const int order = y.order();
  const Rational c1 = y.coefficient(tt.leaf());
  if (c1 == 0)
    throw math_error("series is not invertible: the single-node coefficient is zero");

  GammaCache cache(y);
  TreeSeries z(tt, order);
  TreeSeries residual(tt, order);  // compose(z, y) for the z built so far

  z.set_coefficient(tt.leaf(), 1 / c1);
  add_scaled(residual, 1 / c1, cache.gamma(tt.leaf()));

  // Triangular solve: the grade-n component of compose(z, y) is c1^n * z_n
  // plus contributions of lower grades already accumulated in `residual`.
  Rational cn = c1;
  for (int n = 2; n <= order; ++n) {
    cn *= c1;
    for (TreeId t : tt.trees_of_order(n)) {
      Rational rt = residual.coefficient(t);
      if (rt == 0) continue;
      Rational zt = -rt / cn;
      z.set_coefficient(t, zt);
      add_scaled(residual, zt, cache.gamma(t));
    }
  }

  // `residual` now equals the unit by construction; check the left identity,
  // which the solve did not enforce.
  if (!(compose(y, z) == unit_v(tt, order)))
    throw std::logic_error("inversion post-check failed: y * z != unit");
  return z;
}

TreeSeries log_star(const TreeTable& table, int order) {
  return invert(exp_star(table, order));
}

TreeSeries insertion(const TreeSeries& x, const TreeSeries& y) {
  require_compatible(x, y);
  const TreeTable& tt = x.table();
  const int order = x.order();
  TreeSeries out(tt, order);
  TreeBuilder b;

  for (const auto& [t, ct] : x.terms()) {
    const int nt = tt.nodes(t);
    for (const auto& [s, cs] : y.terms()) {
      const int m = tt.nodes(s);
      if (nt + m - 1 > order) break;
      const Rational coeff = ct * cs;

      for (int v = 0; v < nt; ++v) {
        b.clear();
        const int rt = tt.expand(t, b);
        const int rs = tt.expand(s, b);
        // Parent of v adopts the root of s in place of v; v's children
        // reattach to any vertex of s, one map per term. The replaced
        // vertex stays in the builder but is unreachable from the root.
        int root = rs;
        if (v != 0) {
          root = rt;
          for (int p = 0; p < nt; ++p) b.replace_child(rt + p, rt + v, rs);
        }
        const std::vector<int> orphans = b.children(rt + v);
        const std::size_t kv = orphans.size();
        std::function<void(std::size_t)> attach = [&](std::size_t j) {
          if (j == kv) {
            out.add_term(tt.canonicalize(b, root), coeff);
            return;
          }
          for (int w = 0; w < m; ++w) {
            b.add_child(rs + w, orphans[j]);
            attach(j + 1);
            b.pop_child(rs + w);
          }
        };
        attach(0);
      }
    }
  }
  return out;
}

TreeSeries lie_bracket(const TreeSeries& x, const TreeSeries& y) {
  TreeSeries out = insertion(x, y);
  add_scaled(out, -1, insertion(y, x));
  return out;
}

}  // namespace prelie
