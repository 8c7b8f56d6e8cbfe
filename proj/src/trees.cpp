#include "prelie/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "prelie/errors.hpp"

namespace prelie {

TreeTable::TreeTable(int max_order, int cap) : max_order_(max_order) {
  if (max_order < 1) throw std::invalid_argument("TreeTable: order must be >= 1");
  if (max_order > cap)
    throw cap_error("tree enumeration order " + std::to_string(max_order) +
                    " exceeds the cap " + std::to_string(cap));

  by_order_.resize(max_order + 1);
  nodes_.push_back(Node{{}, TreeCode{0}, 1, 1, 1});
  index_.emplace(std::vector<TreeId>{}, 0);
  by_order_[1] = {0};

  for (int n = 2; n <= max_order; ++n) {
    // Candidate children in canonical child order: node count descending,
    // id (= code order) ascending within a count.
    std::vector<TreeId> univ;
    for (int m = n - 1; m >= 1; --m)
      univ.insert(univ.end(), by_order_[m].begin(), by_order_[m].end());

    std::vector<std::vector<TreeId>> lists;
    std::vector<TreeId> cur;
    std::function<void(std::size_t, int)> gen = [&](std::size_t from, int remaining) {
      if (remaining == 0) {
        lists.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < univ.size(); ++i) {
        if (nodes(univ[i]) > remaining) continue;
        cur.push_back(univ[i]);
        gen(i, remaining - nodes(univ[i]));
        cur.pop_back();
      }
    };
    gen(0, n - 1);

    std::vector<Node> fresh;
    fresh.reserve(lists.size());
    for (auto& ch : lists) {
      Node node;
      node.nodes = static_cast<std::uint16_t>(n);
      node.code.reserve(n);
      node.code.push_back(static_cast<int>(ch.size()));
      int d = 0;
      for (TreeId c : ch) {
        const TreeCode& cc = code(c);
        node.code.insert(node.code.end(), cc.begin(), cc.end());
        d = std::max(d, depth(c));
      }
      node.depth = static_cast<std::uint16_t>(1 + d);
      node.aut = 1;
      for (std::size_t i = 0; i < ch.size();) {
        std::size_t j = i;
        while (j < ch.size() && ch[j] == ch[i]) ++j;
        std::uint64_t mult = j - i;
        for (std::uint64_t f = 2; f <= mult; ++f) node.aut *= f;
        for (std::uint64_t p = 0; p < mult; ++p) node.aut *= symmetry_factor(ch[i]);
        i = j;
      }
      node.children = std::move(ch);
      fresh.push_back(std::move(node));
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const Node& a, const Node& b) { return a.code < b.code; });
    for (auto& node : fresh) {
      TreeId id = static_cast<TreeId>(nodes_.size());
      index_.emplace(node.children, id);
      by_order_[n].push_back(id);
      nodes_.push_back(std::move(node));
    }
  }

  chains_.assign(max_order + 1, 0);
  corollas_.assign(max_order + 1, 0);
  chains_[1] = corollas_[1] = leaf();
  for (int n = 2; n <= max_order; ++n) {
    chains_[n] = lookup({chains_[n - 1]});
    corollas_[n] = lookup(std::vector<TreeId>(n - 1, leaf()));
  }
}

const std::vector<TreeId>& TreeTable::trees_of_order(int n) const {
  if (n < 1 || n > max_order_)
    throw std::out_of_range("trees_of_order: order " + std::to_string(n) +
                            " outside [1, " + std::to_string(max_order_) + "]");
  return by_order_[n];
}

TreeId TreeTable::chain(int n) const {
  if (n < 1 || n > max_order_) throw std::out_of_range("chain: bad order");
  return chains_[n];
}

TreeId TreeTable::corolla(int n) const {
  if (n < 1 || n > max_order_) throw std::out_of_range("corolla: bad order");
  return corollas_[n];
}

TreeId TreeTable::lookup(std::vector<TreeId>&& sorted_children) const {
  auto it = index_.find(sorted_children);
  if (it == index_.end())
    throw cap_error("tree exceeds the table order " + std::to_string(max_order_));
  return it->second;
}

std::string TreeTable::format_code(TreeId t) const {
  const TreeCode& c = code(t);
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

TreeId TreeTable::parse_code(std::string_view text) const {
  TreeCode counts;
  if (text.empty()) throw parse_error("empty tree code", 0);
  if (text.find(',') != std::string_view::npos) {
    std::size_t i = 0;
    while (i <= text.size()) {
      std::size_t start = i;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
      }
      if (digits == 0) throw parse_error("expected a count in tree code", start);
      counts.push_back(std::stoi(std::string(text.substr(start, digits))));
      if (i == text.size()) break;
      if (text[i] != ',') throw parse_error("expected ',' in tree code", i);
      ++i;
      if (i == text.size()) throw parse_error("trailing ',' in tree code", i);
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw parse_error("expected a digit in compact tree code", i);
      counts.push_back(text[i] - '0');
    }
  }

  const int n = static_cast<int>(counts.size());
  long long sum = 0;
  for (int i = 0; i < n; ++i) {
    sum += counts[i];
    // Valid preorder: the first k vertices must announce at least k children
    // among themselves for k < n, and exactly n-1 in total.
    if (i < n - 1 && sum < i + 1)
      throw parse_error("tree code violates the preorder prefix condition", i);
  }
  if (sum != n - 1)
    throw parse_error("tree code child counts sum to " + std::to_string(sum) +
                          ", expected " + std::to_string(n - 1),
                      0);

  TreeBuilder b;
  std::size_t pos = 0;
  std::function<int()> build = [&]() {
    int v = b.add_node();
    int k = counts[pos++];
    for (int i = 0; i < k; ++i) b.add_child(v, build());
    return v;
  };
  int root = build();
  return canonicalize(b, root);
}

TreeId TreeTable::canonicalize(const TreeBuilder& b, int root) const {
  std::function<TreeId(int)> rec = [&](int v) -> TreeId {
    std::vector<TreeId> ch;
    ch.reserve(b.children(v).size());
    for (int c : b.children(v)) ch.push_back(rec(c));
    std::sort(ch.begin(), ch.end(),
              [this](TreeId a, TreeId bb) { return child_order_less(a, bb); });
    return lookup(std::move(ch));
  };
  return rec(root);
}

TreeId TreeTable::canonicalize(std::span<const int> parent, int root) const {
  const int n = static_cast<int>(parent.size());
  if (root < 0 || root >= n) throw input_error("canonicalize: root out of range");
  TreeBuilder b;
  for (int i = 0; i < n; ++i) b.add_node();
  int edges = 0;
  for (int i = 0; i < n; ++i) {
    if (i == root) continue;
    if (parent[i] < 0 || parent[i] >= n || parent[i] == i)
      throw input_error("canonicalize: bad parent pointer");
    b.add_child(parent[i], i);
    ++edges;
  }
  // Reject cycles/disconnection: every vertex must reach the root.
  for (int i = 0; i < n; ++i) {
    int v = i, steps = 0;
    while (v != root) {
      v = parent[v];
      if (++steps > n) throw input_error("canonicalize: parent pointers contain a cycle");
    }
  }
  (void)edges;
  return canonicalize(b, root);
}

int TreeTable::expand(TreeId t, TreeBuilder& b) const {
  int v = b.add_node();
  for (TreeId c : children(t)) b.add_child(v, expand(c, b));
  return v;
}

TreeId TreeTable::graft(TreeId t, TreeId s, int v) const {
  if (v < 0 || v >= nodes(t))
    throw std::out_of_range("graft: vertex " + std::to_string(v) +
                            " out of range for a tree with " +
                            std::to_string(nodes(t)) + " vertices");
  TreeBuilder b;
  int rt = expand(t, b);
  int rs = expand(s, b);
  b.add_child(rt + v, rs);
  return canonicalize(b, rt);
}

}  // namespace prelie
