#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prelie {

// Unlabeled rooted trees are kept in a canonical form and interned, so a
// TreeId names an isomorphism class. The canonical form orders the children
// of every vertex by (subtree node count descending, then canonical code
// ascending), recursively.
//
// The canonical code of a tree is the preorder sequence of child counts:
// "1,1,0" is the chain with three vertices, "2,0,0" the three-vertex corolla.
using TreeId = std::uint32_t;
using TreeCode = std::vector<int>;

// Mutable scratch structure for assembling a tree before interning it.
// Vertices are indices; edges are added parent -> child.
class TreeBuilder {
 public:
  int add_node() {
    kids_.emplace_back();
    return static_cast<int>(kids_.size()) - 1;
  }
  void add_child(int parent, int child) { kids_[parent].push_back(child); }
  void pop_child(int parent) { kids_[parent].pop_back(); }
  void replace_child(int parent, int old_child, int new_child) {
    for (int& c : kids_[parent])
      if (c == old_child) {
        c = new_child;
        return;
      }
  }
  void clear() { kids_.clear(); }
  int size() const { return static_cast<int>(kids_.size()); }
  const std::vector<int>& children(int v) const { return kids_[v]; }

 private:
  std::vector<std::vector<int>> kids_;
};

// All canonical trees with up to `max_order` vertices, enumerated once and
// immutable afterwards. TreeIds are assigned by (node count ascending,
// canonical code ascending), so the natural order of ids is also the
// deterministic output order for series terms. Every query is const and the
// table may be shared across threads once constructed.
class TreeTable {
 public:
  static constexpr int kDefaultCap = 12;

  explicit TreeTable(int max_order, int cap = kDefaultCap);

  int max_order() const { return max_order_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<TreeId>& trees_of_order(int n) const;

  int nodes(TreeId t) const { return nodes_[t].nodes; }
  int depth(TreeId t) const { return nodes_[t].depth; }
  std::uint64_t symmetry_factor(TreeId t) const { return nodes_[t].aut; }
  const std::vector<TreeId>& children(TreeId t) const {
    return nodes_[t].children;
  }
  const TreeCode& code(TreeId t) const { return nodes_[t].code; }

  // A tree is linear (a chain) when no vertex branches; it is a corolla when
  // its depth is at most two. The single vertex is both.
  bool is_linear(TreeId t) const { return depth(t) == nodes(t); }
  bool is_corolla(TreeId t) const { return depth(t) <= 2; }

  TreeId leaf() const { return 0; }
  TreeId chain(int n) const;    // the chain with n vertices
  TreeId corolla(int n) const;  // the corolla with n vertices

  std::string format_code(TreeId t) const;

  // Accepts a comma-separated count sequence, or a compact digit string when
  // every count is a single digit ("1,1,0" and "110" name the same tree).
  // Non-canonical child orders are accepted and canonicalized.
  TreeId parse_code(std::string_view text) const;

  // Interns the isomorphism class of an arbitrarily ordered rooted tree given
  // by parent pointers (parent[root] is ignored). Throws input_error when the
  // structure is not a tree, cap_error when it is larger than the table.
  TreeId canonicalize(std::span<const int> parent, int root) const;
  TreeId canonicalize(const TreeBuilder& b, int root) const;

  // The root of s becomes a new child of vertex v of t, where v indexes the
  // canonical preorder of t. Throws std::out_of_range on a bad vertex.
  TreeId graft(TreeId t, TreeId s, int v) const;

  // Appends a copy of t to the builder, laid out in canonical preorder so
  // that vertex v of t is builder index (returned root + v).
  int expand(TreeId t, TreeBuilder& b) const;

  // Child comparator of the canonical form.
  bool child_order_less(TreeId a, TreeId b) const {
    int na = nodes(a), nb = nodes(b);
    return na != nb ? na > nb : a < b;
  }

 private:
  struct Node {
    std::vector<TreeId> children;  // canonical order
    TreeCode code;
    std::uint64_t aut;
    std::uint16_t nodes;
    std::uint16_t depth;
  };

  struct ChildListHash {
    std::size_t operator()(const std::vector<TreeId>& v) const noexcept {
      std::size_t h = 0xcbf29ce484222325ull;
      for (TreeId t : v) {
        h ^= t;
        h *= 0x100000001b3ull;
      }
      return h;
    }
  };

  TreeId lookup(std::vector<TreeId>&& sorted_children) const;

  int max_order_;
  std::vector<Node> nodes_;
  std::vector<std::vector<TreeId>> by_order_;
  std::unordered_map<std::vector<TreeId>, TreeId, ChildListHash> index_;
  std::vector<TreeId> chains_;    // chains_[n], n >= 1
  std::vector<TreeId> corollas_;  // corollas_[n], n >= 1
};

}  // namespace prelie
