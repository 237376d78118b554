// SPDX-License-Identifier: Apache-2.0
#include "hypred/cluster_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "hypred/error.hpp"

namespace hypred {

bool Cluster::contains(std::size_t point) const {
  return std::binary_search(members.begin(), members.end(), point);
}

bool Cluster::contains(const Cluster& other) const {
  return std::includes(members.begin(), members.end(), other.members.begin(), other.members.end());
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::int64_t pair_valuation(const BranchConfig& cfg, std::size_t i, std::size_t j) {
  return val(cfg.points[i] - cfg.points[j], cfg.p).value();
}

Cluster make_cluster(const BranchConfig& cfg, std::vector<std::size_t> members, std::int64_t depth) {
  std::sort(members.begin(), members.end());
  Cluster c;
  c.center_index = members.front();
  c.center = cfg.points[c.center_index];
  c.depth = depth;
  c.members = std::move(members);
  return c;
}

}  // namespace

std::vector<Cluster> build_cluster_hierarchy(const BranchConfig& config) {
  const std::size_t n = config.point_count();
  struct Pair {
    std::int64_t level;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({pair_valuation(config, i, j), i, j});
  }
  // Single linkage on the similarity val(xi - xj): merge from the deepest level up.
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.level > b.level; });

  DisjointSets sets(n);
  std::vector<Cluster> out;
  std::size_t k = 0;
  while (k < pairs.size()) {
    const std::int64_t level = pairs[k].level;
    std::set<std::size_t> touched;
    for (; k < pairs.size() && pairs[k].level == level; ++k) {
      if (sets.unite(pairs[k].i, pairs[k].j)) touched.insert(pairs[k].i);
    }
    std::set<std::size_t> roots;
    for (auto t : touched) roots.insert(sets.find(t));
    for (auto r : roots) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (sets.find(i) == r) members.push_back(i);
      }
      out.push_back(make_cluster(config, std::move(members), level));
    }
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    return std::tie(a.depth, a.center_index) < std::tie(b.depth, b.center_index);
  });
  return out;
}

std::vector<std::size_t> MarkedTree::incident_edges(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges) {
    if (e.parent == v || e.child == v) out.push_back(e.id);
  }
  return out;
}

std::size_t MarkedTree::mark_count() const {
  std::size_t total = 0;
  for (const auto& v : vertices) total += v.marks.size();
  return total;
}

std::size_t MarkedTree::vertex_of_mark(std::size_t mark) const {
  for (const auto& v : vertices) {
    if (std::binary_search(v.marks.begin(), v.marks.end(), mark)) return v.id;
  }
  throw Error(ErrorCode::InvalidArgument, "mark " + std::to_string(mark) + " is not on the tree");
}

std::vector<std::size_t> MarkedTree::subtree(std::size_t edge_id) const {
  const TreeEdge& cut = edges.at(edge_id);
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{cut.child};
  std::vector<bool> seen(vertices.size(), false);
  seen[cut.child] = true;
  seen[cut.parent] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (auto eid : incident_edges(v)) {
      const auto w = edges[eid].other(v);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MarkedTree assemble_tree(std::vector<TreeVertex> vertices, const std::vector<LooseEdge>& edges, std::size_t root) {
  const std::size_t n = vertices.size();
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back({e.b, e.thickness});
    adj[e.b].push_back({e.a, e.thickness});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
      return vertices[x.first].cluster.center_index < vertices[y.first].cluster.center_index;
    });
  }
  std::vector<std::size_t> new_id(n, n);
  std::vector<std::size_t> order;
  MarkedTree tree;
  std::queue<std::size_t> queue;
  queue.push(root);
  new_id[root] = 0;
  order.push_back(root);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop();
    for (const auto& [w, thickness] : adj[v]) {
      if (new_id[w] != n) continue;
      new_id[w] = order.size();
      order.push_back(w);
      tree.edges.push_back(TreeEdge{tree.edges.size(), new_id[v], new_id[w], thickness});
      queue.push(w);
    }
  }
  if (order.size() != n) throw Error(ErrorCode::InternalInstability, "marked tree is disconnected");
  if (tree.edges.size() != edges.size()) throw Error(ErrorCode::InternalInstability, "marked tree has a cycle");
  for (std::size_t k = 0; k < n; ++k) {
    TreeVertex v = std::move(vertices[order[k]]);
    v.id = k;
    std::sort(v.marks.begin(), v.marks.end());
    tree.vertices.push_back(std::move(v));
  }
  tree.root = 0;
  return tree;
}

MarkedTree stabilize(const std::vector<Cluster>& hierarchy, const BranchConfig& config) {
  const std::size_t n = config.point_count();
  const std::size_t m = hierarchy.size();
  if (m == 0) throw Error(ErrorCode::InternalInstability, "empty cluster hierarchy");

  struct Work {
    Cluster cluster;
    std::vector<std::size_t> marks;
    bool alive = true;
  };
  struct WorkEdge {
    std::size_t a, b;
    std::int64_t thickness;
    bool alive = true;
  };
  std::vector<Work> verts;
  for (const auto& c : hierarchy) verts.push_back({c, {}, true});
  std::vector<WorkEdge> edges;

  auto smallest_containing = [&](auto&& pred) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < m; ++k) {
      if (pred(hierarchy[k]) && (!best || hierarchy[k].members.size() < hierarchy[*best].members.size())) best = k;
    }
    return best;
  };
  for (std::size_t k = 0; k < m; ++k) {
    auto parent = smallest_containing([&](const Cluster& c) {
      return c.members.size() > hierarchy[k].members.size() && c.contains(hierarchy[k]);
    });
    if (parent) edges.push_back({*parent, k, hierarchy[k].depth - hierarchy[*parent].depth, true});
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto home = smallest_containing([&](const Cluster& c) { return c.contains(i); });
    if (!home) throw Error(ErrorCode::InternalInstability, "point outside every cluster");
    verts[*home].marks.push_back(i);
  }

  auto incident = [&](std::size_t v) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].alive && (edges[e].a == v || edges[e].b == v)) out.push_back(e);
    }
    return out;
  };
  auto far_end = [&](std::size_t e, std::size_t v) { return edges[e].a == v ? edges[e].b : edges[e].a; };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < m; ++v) {
      if (!verts[v].alive) continue;
      const auto inc = incident(v);
      const auto legs = inc.size() + verts[v].marks.size();
      if (legs >= 3) continue;
      if (inc.size() == 2 && verts[v].marks.empty()) {
        const auto x = far_end(inc[0], v);
        const auto y = far_end(inc[1], v);
        edges.push_back({x, y, edges[inc[0]].thickness + edges[inc[1]].thickness, true});
        edges[inc[0]].alive = edges[inc[1]].alive = false;
      } else if (inc.size() == 1 && verts[v].marks.size() == 1) {
        const auto x = far_end(inc[0], v);
        verts[x].marks.push_back(verts[v].marks.front());
        verts[v].marks.clear();
        edges[inc[0]].alive = false;
      } else {
        throw Error(ErrorCode::InternalInstability,
                    "vertex with " + std::to_string(inc.size()) + " edges and " +
                        std::to_string(verts[v].marks.size()) + " marks cannot be stabilized");
      }
      verts[v].alive = false;
      changed = true;
    }
  }

  std::vector<std::size_t> remap(m, m);
  std::vector<TreeVertex> out_vertices;
  for (std::size_t v = 0; v < m; ++v) {
    if (!verts[v].alive) continue;
    remap[v] = out_vertices.size();
    out_vertices.push_back(TreeVertex{0, verts[v].cluster, verts[v].marks});
  }
  std::vector<LooseEdge> out_edges;
  for (const auto& e : edges) {
    if (e.alive) out_edges.push_back({remap[e.a], remap[e.b], e.thickness});
  }
  // Root: the full-set cluster if it survived, else the shallowest survivor.
  std::size_t root = 0;
  for (std::size_t k = 1; k < out_vertices.size(); ++k) {
    const auto& a = out_vertices[k].cluster;
    const auto& b = out_vertices[root].cluster;
    if (std::tie(a.depth, a.center_index) < std::tie(b.depth, b.center_index)) root = k;
  }
  MarkedTree tree = assemble_tree(std::move(out_vertices), out_edges, root);
  validate_marked_tree(tree, n);
  return tree;
}

MarkedTree build_marked_tree(const BranchConfig& config) {
  return stabilize(build_cluster_hierarchy(config), config);
}

void validate_marked_tree(const MarkedTree& tree, std::size_t point_count) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InternalInstability, what); };
  if (tree.vertices.empty()) fail("tree has no vertices");
  if (tree.edges.size() + 1 != tree.vertices.size()) fail("edge count is not vertex count - 1");
  std::vector<int> seen(point_count, 0);
  for (const auto& v : tree.vertices) {
    const auto legs = tree.incident_edges(v.id).size() + v.marks.size();
    if (legs < 3) fail("vertex v" + std::to_string(v.id) + " is unstable");
    for (auto mk : v.marks) {
      if (mk >= point_count) fail("mark out of range");
      ++seen[mk];
    }
  }
  for (std::size_t i = 0; i < point_count; ++i) {
    if (seen[i] != 1) fail("point " + std::to_string(i) + " is not marked exactly once");
  }
  for (const auto& e : tree.edges) {
    if (e.thickness <= 0) fail("edge e" + std::to_string(e.id) + " has nonpositive thickness");
  }
  // Connectivity: BFS from the root reaches every vertex.
  std::vector<bool> reached(tree.vertices.size(), false);
  std::vector<std::size_t> stack{tree.root};
  reached[tree.root] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++count;
    for (auto eid : tree.incident_edges(v)) {
      const auto w = tree.edges[eid].other(v);
      if (!reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (count != tree.vertices.size()) fail("tree is disconnected");
}

const char* parity_name(Parity parity) { return parity == Parity::Even ? "even" : "odd"; }

std::vector<EdgeClass> classify_edges(const MarkedTree& tree, const BranchConfig& config) {
  std::vector<EdgeClass> out;
  const std::size_t total = config.point_count();
  for (const auto& e : tree.edges) {
    std::size_t r = 0;
    for (auto v : tree.subtree(e.id)) r += tree.vertices[v].marks.size();
    const std::size_t other_side = total - r;
    if (r % 2 != other_side % 2) {
      throw Error(ErrorCode::InvariantViolation, "side parities differ across edge e" + std::to_string(e.id));
    }
    out.push_back({e.id, r, r % 2 == 0 ? Parity::Even : Parity::Odd});
  }
  return out;
}

namespace {

P1Residue chart_residue(const Rational& x, const Cluster& cluster, OddPrime p) {
  const Rational local = (x - cluster.center) * pow(Rational(static_cast<long>(p.value())), -cluster.depth);
  if (val(local, p) < ValInt(0)) return std::nullopt;
  return residue(local, p);
}

std::string residue_text(const P1Residue& r) { return r ? std::to_string(*r) : std::string("inf"); }

}  // namespace

std::vector<LegResidue> mark_residues(const MarkedTree& tree, const BranchConfig& config, std::size_t vertex) {
  const TreeVertex& v = tree.vertices.at(vertex);
  std::vector<LegResidue> out;
  for (auto mk : v.marks) {
    out.push_back({Leg{Leg::Kind::Mark, mk}, chart_residue(config.points[mk], v.cluster, config.p)});
  }
  for (auto eid : tree.incident_edges(vertex)) {
    const TreeVertex& w = tree.vertices[tree.edges[eid].other(vertex)];
    P1Residue r;
    if (v.cluster.contains(w.cluster) && w.cluster.members.size() < v.cluster.members.size()) {
      r = chart_residue(w.cluster.center, v.cluster, config.p);
    }
    out.push_back({Leg{Leg::Kind::Edge, eid}, r});
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[i].residue == out[j].residue) {
        throw Error(ErrorCode::ResidueCollision,
                    "two legs of vertex v" + std::to_string(vertex) + " reduce to " + residue_text(out[i].residue));
      }
    }
  }
  return out;
}

namespace {

std::string rooted_code(const MarkedTree& tree, std::size_t v, std::optional<std::size_t> from) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < tree.vertices[v].marks.size(); ++k) {
    os << (k ? "," : "") << tree.vertices[v].marks[k];
  }
  os << ";";
  std::vector<std::string> kids;
  for (auto eid : tree.incident_edges(v)) {
    const auto w = tree.edges[eid].other(v);
    if (from && w == *from) continue;
    kids.push_back("t" + std::to_string(tree.edges[eid].thickness) + rooted_code(tree, w, v));
  }
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) os << k;
  os << "]";
  return os.str();
}

void collect_marks(const MarkedTree& tree, std::size_t v, std::size_t from, std::vector<std::size_t>& out) {
  out.insert(out.end(), tree.vertices[v].marks.begin(), tree.vertices[v].marks.end());
  for (auto eid : tree.incident_edges(v)) {
    const auto w = tree.edges[eid].other(v);
    if (w != from) collect_marks(tree, w, v, out);
  }
}

}  // namespace

std::string labeled_tree_code(const MarkedTree& tree) {
  // Marks are labelled, so rooting at the vertex of mark 0 is canonical.
  return rooted_code(tree, tree.vertex_of_mark(0), std::nullopt);
}

std::string vertex_key(const MarkedTree& tree, std::size_t vertex) {
  std::vector<std::string> branches;
  for (auto eid : tree.incident_edges(vertex)) {
    std::vector<std::size_t> marks;
    collect_marks(tree, tree.edges[eid].other(vertex), vertex, marks);
    std::sort(marks.begin(), marks.end());
    std::string s = "{";
    for (std::size_t k = 0; k < marks.size(); ++k) s += (k ? "," : "") + std::to_string(marks[k]);
    branches.push_back(s + "}");
  }
  std::sort(branches.begin(), branches.end());
  std::string key = "<";
  for (std::size_t k = 0; k < tree.vertices[vertex].marks.size(); ++k) {
    key += (k ? "," : "") + std::to_string(tree.vertices[vertex].marks[k]);
  }
  key += "|";
  for (const auto& b : branches) key += b;
  return key + ">";
}

}  // namespace hypred
