// SPDX-License-Identifier: Apache-2.0
#include "hypred/atlas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "hypred/error.hpp"

namespace hypred {

int AbstractMarkedTree::total_marks() const { return std::accumulate(marks.begin(), marks.end(), 0); }

std::vector<std::vector<std::size_t>> AbstractMarkedTree::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(marks.size());
  for (const auto& [a, b] : edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  return adj;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::size_t> centers(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  if (n <= 2) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<std::size_t> degree(n);
  std::vector<std::size_t> layer;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = adj[v].size();
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (auto v : layer) {
      for (auto w : adj[v]) {
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string rooted_code(const AbstractMarkedTree& tree, const std::vector<std::vector<std::size_t>>& adj,
                        std::size_t v, std::size_t parent) {
  std::vector<std::string> kids;
  for (auto w : adj[v]) {
    if (w != parent) kids.push_back(rooted_code(tree, adj, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string code = "(" + std::to_string(tree.marks[v]);
  for (const auto& k : kids) code += k;
  return code + ")";
}

// Relabels vertices in preorder along sorted child codes from the best center.
AbstractMarkedTree canonical_form(const AbstractMarkedTree& tree) {
  const auto adj = tree.adjacency();
  const auto cs = centers(adj);
  std::size_t root = cs.front();
  std::string best = rooted_code(tree, adj, root, root);
  for (auto c : cs) {
    auto code = rooted_code(tree, adj, c, c);
    if (code < best) {
      best = std::move(code);
      root = c;
    }
  }
  AbstractMarkedTree out;
  std::function<void(std::size_t, std::size_t, std::size_t)> emit = [&](std::size_t v, std::size_t parent,
                                                                         std::size_t new_parent) {
    const std::size_t id = out.marks.size();
    out.marks.push_back(tree.marks[v]);
    if (v != parent) out.edges.emplace_back(new_parent, id);
    std::vector<std::pair<std::string, std::size_t>> kids;
    for (auto w : adj[v]) {
      if (w != parent) kids.emplace_back(rooted_code(tree, adj, w, v), w);
    }
    std::stable_sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& kid : kids) emit(kid.second, v, id);
  };
  emit(root, root, 0);
  return out;
}

// Unmarked tree shapes on n vertices, grown by attaching leaves.
std::vector<AbstractMarkedTree> shapes(std::size_t n, bool reverse) {
  std::vector<AbstractMarkedTree> level{AbstractMarkedTree{{0}, {}}};
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<AbstractMarkedTree> next;
    std::set<std::string> seen;
    for (const auto& t : level) {
      for (std::size_t i = 0; i < t.vertex_count(); ++i) {
        const std::size_t v = reverse ? t.vertex_count() - 1 - i : i;
        AbstractMarkedTree grown = t;
        grown.marks.push_back(0);
        grown.edges.emplace_back(v, t.vertex_count());
        if (seen.insert(canonical_code(grown)).second) next.push_back(std::move(grown));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

bool is_stable_tree(const AbstractMarkedTree& tree) {
  const std::size_t n = tree.vertex_count();
  if (n == 0 || tree.edges.size() + 1 != n) return false;
  UnionFind uf(n);
  for (const auto& [a, b] : tree.edges) {
    if (a >= n || b >= n || !uf.unite(a, b)) return false;
  }
  const auto adj = tree.adjacency();
  for (std::size_t v = 0; v < n; ++v) {
    if (tree.marks[v] < 0 || static_cast<int>(adj[v].size()) + tree.marks[v] < 3) return false;
  }
  return true;
}

std::string canonical_code(const AbstractMarkedTree& tree) {
  const auto adj = tree.adjacency();
  std::string best;
  for (auto c : centers(adj)) {
    auto code = rooted_code(tree, adj, c, c);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<AbstractMarkedTree> enumerate_types(int g, bool reverse_generation) {
  if (g < 1) throw Error(ErrorCode::GenusTooSmall, "genus must be at least 1, got " + std::to_string(g));
  const int n = 2 * g + 2;
  std::map<std::string, AbstractMarkedTree> found;
  for (int k = 1; k <= n - 2; ++k) {
    for (const auto& shape : shapes(static_cast<std::size_t>(k), reverse_generation)) {
      const auto adj = shape.adjacency();
      AbstractMarkedTree t = shape;
      std::vector<int> need(t.vertex_count());
      int floor_total = 0;
      for (std::size_t v = 0; v < need.size(); ++v) {
        need[v] = std::max(0, 3 - static_cast<int>(adj[v].size()));
        floor_total += need[v];
      }
      if (floor_total > n) continue;
      std::function<void(std::size_t, int)> place = [&](std::size_t v, int left) {
        if (v + 1 == t.vertex_count()) {
          if (left < need[v]) return;
          t.marks[v] = left;
          auto code = canonical_code(t);
          if (!found.count(code)) found.emplace(std::move(code), canonical_form(t));
          return;
        }
        int later = 0;
        for (std::size_t w = v + 1; w < need.size(); ++w) later += need[w];
        const int lo = need[v];
        const int hi = left - later;
        for (int i = 0; i <= hi - lo; ++i) {
          t.marks[v] = reverse_generation ? hi - i : lo + i;
          place(v + 1, left - t.marks[v]);
        }
      };
      place(0, n);
    }
  }
  std::vector<AbstractMarkedTree> out;
  for (auto& [code, t] : found) out.push_back(std::move(t));
  return out;
}

AbstractMarkedTree abstract_tree(const MarkedTree& tree) {
  AbstractMarkedTree out;
  for (const auto& v : tree.vertices) out.marks.push_back(static_cast<int>(v.marks.size()));
  for (const auto& e : tree.edges) out.edges.emplace_back(e.parent, e.child);
  return out;
}

AbstractFiberType derive_fiber_type(const AbstractMarkedTree& tree) {
  const std::size_t nv = tree.vertex_count();
  const auto adj = tree.adjacency();
  AbstractFiberType out;

  // Marks on the side of b away from a, for each edge.
  std::function<int(std::size_t, std::size_t)> side = [&](std::size_t v, std::size_t parent) {
    int total = tree.marks[v];
    for (auto w : adj[v]) {
      if (w != parent) total += side(w, v);
    }
    return total;
  };
  std::vector<std::size_t> t_size(nv, 0);
  for (std::size_t k = 0; k < tree.edges.size(); ++k) {
    const auto [a, b] = tree.edges[k];
    const int r = side(b, a);
    const Parity parity = r % 2 == 0 ? Parity::Even : Parity::Odd;
    out.edges.push_back(AbstractFiberEdge{k, parity, parity == Parity::Odd ? 1 : 2});
    if (parity == Parity::Odd) {
      ++t_size[a];
      ++t_size[b];
    } else {
      ++out.n0;
    }
  }
  // Expanded graph: a pair contributes two nodes, first and first + 1.
  std::vector<std::size_t> first(nv);
  std::size_t nodes = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t t = t_size[v] + static_cast<std::size_t>(tree.marks[v]);
    if (t % 2 != 0) throw Error(ErrorCode::InvariantViolation, "|T| is odd in an abstract type");
    AbstractComponent comp{v, t == 0 ? 0 : static_cast<int>(t / 2) - 1, t == 0};
    if (comp.pair) ++out.m0;
    out.abelian_rank += comp.genus;
    out.components.push_back(comp);
    first[v] = nodes;
    nodes += comp.pair ? 2 : 1;
  }
  UnionFind uf(nodes);
  std::size_t expanded_edges = 0;
  std::size_t merges = 0;
  auto join = [&](std::size_t x, std::size_t y) {
    ++expanded_edges;
    if (uf.unite(x, y)) ++merges;
  };
  for (const auto& fe : out.edges) {
    const auto [a, b] = tree.edges[fe.base_edge];
    const bool pa = out.components[a].pair;
    const bool pb = out.components[b].pair;
    if (fe.parity == Parity::Odd) {
      join(first[a], first[b]);
    } else {
      join(first[a], first[b]);
      join(first[a] + (pa ? 1 : 0), first[b] + (pb ? 1 : 0));
    }
  }
  const auto cc = nodes - merges;
  out.betti = static_cast<std::int64_t>(expanded_edges) - static_cast<std::int64_t>(nodes) + static_cast<std::int64_t>(cc);
  out.toric_rank = static_cast<std::int64_t>(out.n0) - static_cast<std::int64_t>(out.m0);
  if (out.betti != out.toric_rank) {
    throw Error(ErrorCode::RankMismatch, "abstract type: Betti number " + std::to_string(out.betti) +
                                             " differs from n0 - m0 = " + std::to_string(out.toric_rank));
  }
  return out;
}

}  // namespace hypred
