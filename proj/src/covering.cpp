// SPDX-License-Identifier: Apache-2.0
#include "hypred/covering.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "hypred/error.hpp"

namespace hypred {

const char* sheet_name(Sheet sheet) {
  switch (sheet) {
    case Sheet::Only: return "only";
    case Sheet::Plus: return "plus";
    case Sheet::Minus: return "minus";
  }
  return "?";
}

const char* split_name(SplitKind split) {
  switch (split) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::NotApplicable: return "not_applicable";
  }
  return "?";
}

std::int64_t vertex_f_valuation(const BranchConfig& config, const TreeVertex& vertex) {
  const auto& center = vertex.cluster.center;
  const auto depth = vertex.cluster.depth;
  std::int64_t total = val(config.c, config.p).value();
  for (const auto& xi : config.points) {
    const ValInt v = val(center - xi, config.p);
    total += v.is_infinite() ? depth : std::min(v.value(), depth);
  }
  return total;
}

ExtensionDecision decide_extension(const BranchConfig& config, const MarkedTree& tree) {
  ExtensionDecision d;
  for (const auto& v : tree.vertices) {
    const auto value = vertex_f_valuation(config, v);
    d.valuations.push_back(value);
    d.parities.push_back(static_cast<int>(((value % 2) + 2) % 2));
  }
  d.e = std::any_of(d.parities.begin(), d.parities.end(), [](int x) { return x == 1; }) ? 2 : 1;
  return d;
}

std::vector<std::size_t> SpecialFiberGraph::components_over(std::size_t base_vertex) const {
  std::vector<std::size_t> out;
  for (const auto& c : components) {
    if (c.base_vertex == base_vertex) out.push_back(c.id);
  }
  return out;
}

namespace {

std::size_t count_connected(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t count = vertex_count;
  for (const auto& [a, b] : edges) {
    const auto ra = find(a);
    const auto rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --count;
    }
  }
  return count;
}

}  // namespace

std::size_t SpecialFiberGraph::connected_component_count() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : edges) pairs.emplace_back(e.a, e.b);
  return count_connected(components.size(), pairs);
}

std::int64_t SpecialFiberGraph::betti_number() const {
  return static_cast<std::int64_t>(edges.size()) - static_cast<std::int64_t>(components.size()) +
         static_cast<std::int64_t>(connected_component_count());
}

int SpecialFiberGraph::genus_sum() const {
  int total = 0;
  for (const auto& c : components) total += c.genus;
  return total;
}

FpPoly component_equation(const BranchConfig& config, const MarkedTree& tree, const ExtensionDecision& decision,
                          std::size_t vertex) {
  const TreeVertex& v = tree.vertices.at(vertex);
  const RatPoly local = substitute_affine(config.polynomial(), v.cluster.center, v.cluster.depth, config.p);
  return reduce_unit_poly(local, decision.valuations.at(vertex), config.p);
}

SplitKind split_or_inert(const FpPoly& equation, const FiberComponent& component) {
  if (component.t_size() != 0) return SplitKind::NotApplicable;
  const OddRootAnalysis analysis = odd_multiplicity_roots(equation);
  if (!analysis.square_certificate || !analysis.odd_roots.empty() || equation.degree() % 2 != 0) {
    throw Error(ErrorCode::NotTwoLineComponent,
                "equation " + equation.to_string() + " is not a constant times a square");
  }
  return legendre(analysis.unit, equation.prime()) == 1 ? SplitKind::Split : SplitKind::Inert;
}

namespace {

bool p1_less(const P1Residue& a, const P1Residue& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

}  // namespace

std::vector<P1Residue> branch_locus(const FpPoly& equation) {
  const OddRootAnalysis analysis = odd_multiplicity_roots(equation);
  std::vector<P1Residue> out(analysis.odd_roots.begin(), analysis.odd_roots.end());
  if (equation.degree() % 2 != 0) out.push_back(std::nullopt);
  std::sort(out.begin(), out.end(), p1_less);
  return out;
}

std::vector<P1Residue> t_residues(const MarkedTree& tree, const BranchConfig& config,
                                  const std::vector<EdgeClass>& classes, std::size_t vertex) {
  std::vector<P1Residue> out;
  for (const auto& lr : mark_residues(tree, config, vertex)) {
    if (lr.leg.kind == Leg::Kind::Mark || classes.at(lr.leg.index).parity == Parity::Odd) out.push_back(lr.residue);
  }
  std::sort(out.begin(), out.end(), p1_less);
  return out;
}

SpecialFiberGraph build_special_fiber(const MarkedTree& tree, const std::vector<EdgeClass>& classes,
                                      const ExtensionDecision& decision, const BranchConfig& config,
                                      const FiberBuildOptions& options) {
  SpecialFiberGraph fiber;
  const std::size_t nv = tree.vertices.size();

  // Components, ordered by (base vertex, sheet).
  std::vector<std::vector<std::size_t>> over(nv);
  for (const auto& v : tree.vertices) {
    FiberComponent base;
    base.base_vertex = v.id;
    base.t_marks = v.marks;
    for (auto eid : tree.incident_edges(v.id)) {
      if (classes.at(eid).parity == Parity::Odd) base.t_odd_edges.push_back(eid);
    }
    std::sort(base.t_odd_edges.begin(), base.t_odd_edges.end());
    const std::size_t t = base.t_size();
    if (t % 2 != 0) {
      throw Error(ErrorCode::InvariantViolation, "|T| is odd at vertex v" + std::to_string(v.id));
    }
    if (t > 0) {
      base.sheet = Sheet::Only;
      base.genus = static_cast<int>(t / 2) - 1;
      base.id = fiber.components.size();
      over[v.id].push_back(base.id);
      fiber.components.push_back(base);
    } else {
      const SplitKind split = split_or_inert(component_equation(config, tree, decision, v.id), base);
      for (Sheet s : {Sheet::Plus, Sheet::Minus}) {
        FiberComponent c = base;
        c.sheet = s;
        c.genus = 0;
        c.split = split;
        c.id = fiber.components.size();
        over[v.id].push_back(c.id);
        fiber.components.push_back(c);
      }
    }
  }

  // Glue along base edges in BFS order from a component carrying a mark.
  const std::size_t start = options.start_vertex.value_or(tree.vertex_of_mark(0));
  if (over[start].size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "BFS must start at a vertex with nonempty T");
  }
  std::vector<bool> visited(nv, false);
  std::queue<std::size_t> queue;
  queue.push(start);
  visited[start] = true;
  std::vector<FiberEdge> edges;
  auto add_edge = [&](std::size_t a, std::size_t b, std::size_t base_edge, std::int64_t t, Parity parity) {
    edges.push_back(FiberEdge{0, std::min(a, b), std::max(a, b), base_edge, t, parity});
  };
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    auto inc = tree.incident_edges(u);
    if (options.reverse_order) std::reverse(inc.begin(), inc.end());
    for (auto eid : inc) {
      const auto w = tree.edges[eid].other(u);
      if (visited[w]) continue;
      visited[w] = true;
      queue.push(w);
      const std::int64_t extended = decision.e * tree.edges[eid].thickness;
      const auto& cu = over[u];
      const auto& cw = over[w];
      if (classes.at(eid).parity == Parity::Odd) {
        if (extended % 2 != 0) {
          throw Error(ErrorCode::ThicknessParity,
                      "odd edge e" + std::to_string(eid) + " has odd extended thickness " + std::to_string(extended));
        }
        if (cu.size() != 1 || cw.size() != 1) {
          throw Error(ErrorCode::InvariantViolation, "odd edge e" + std::to_string(eid) + " touches a sheet pair");
        }
        add_edge(cu[0], cw[0], eid, extended / 2, Parity::Odd);
      } else if (cu.size() == 1 && cw.size() == 1) {
        add_edge(cu[0], cw[0], eid, extended, Parity::Even);
        add_edge(cu[0], cw[0], eid, extended, Parity::Even);
      } else if (cu.size() == 1 || cw.size() == 1) {
        const auto single = cu.size() == 1 ? cu[0] : cw[0];
        const auto& pair = cu.size() == 1 ? cw : cu;
        add_edge(single, pair[0], eid, extended, Parity::Even);
        add_edge(single, pair[1], eid, extended, Parity::Even);
      } else {
        const std::size_t cross = options.swap_pairing ? 1 : 0;
        add_edge(cu[0], cw[cross], eid, extended, Parity::Even);
        add_edge(cu[1], cw[1 - cross], eid, extended, Parity::Even);
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const FiberEdge& x, const FiberEdge& y) {
    return std::tie(x.base_edge, x.a, x.b) < std::tie(y.base_edge, y.a, y.b);
  });
  for (std::size_t k = 0; k < edges.size(); ++k) edges[k].id = k;
  fiber.edges = std::move(edges);

  fiber.lifted_marks.assign(tree.mark_count(), 0);
  for (const auto& v : tree.vertices) {
    for (auto mk : v.marks) fiber.lifted_marks.at(mk) = over[v.id].front();
  }
  return fiber;
}

JacobianReport jacobian_report(const SpecialFiberGraph& fiber, const MarkedTree& tree,
                               const std::vector<EdgeClass>& classes) {
  JacobianReport r;
  for (const auto& ec : classes) {
    if (ec.parity == Parity::Even) ++r.n0;
  }
  for (const auto& v : tree.vertices) {
    bool odd_edge = false;
    for (auto eid : tree.incident_edges(v.id)) odd_edge = odd_edge || classes.at(eid).parity == Parity::Odd;
    if (v.marks.empty() && !odd_edge) ++r.m0;
  }
  if (fiber.connected_component_count() != 1) {
    throw Error(ErrorCode::InvariantViolation, "special fiber is disconnected");
  }
  r.toric_rank = static_cast<std::int64_t>(r.n0) - static_cast<std::int64_t>(r.m0);
  const auto betti = fiber.betti_number();
  if (betti != r.toric_rank) {
    throw Error(ErrorCode::RankMismatch, "n0 - m0 = " + std::to_string(r.toric_rank) + " but the fiber has Betti number " +
                                             std::to_string(betti));
  }
  r.abelian_rank = fiber.genus_sum();
  const auto genus = static_cast<std::int64_t>(tree.mark_count() / 2) - 1;
  if (r.abelian_rank + r.toric_rank != genus) {
    throw Error(ErrorCode::InvariantViolation, "abelian + toric rank differs from the genus");
  }
  r.potential_good = r.n0 == 0;
  return r;
}

bool side_preimages_connected(const SpecialFiberGraph& fiber, const MarkedTree& tree) {
  for (const auto& e : tree.edges) {
    const auto inside = tree.subtree(e.id);
    std::vector<bool> child_side(tree.vertices.size(), false);
    for (auto v : inside) child_side[v] = true;
    for (bool side : {true, false}) {
      std::vector<std::size_t> local(fiber.components.size(), fiber.components.size());
      std::size_t count = 0;
      for (const auto& c : fiber.components) {
        if (child_side[c.base_vertex] == side) local[c.id] = count++;
      }
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& fe : fiber.edges) {
        if (local[fe.a] < count && local[fe.b] < count) pairs.emplace_back(local[fe.a], local[fe.b]);
      }
      if (count_connected(count, pairs) != 1) return false;
    }
  }
  return true;
}

std::string fiber_code(const SpecialFiberGraph& fiber, const MarkedTree& tree) {
  std::vector<std::string> keys;
  for (const auto& v : tree.vertices) keys.push_back(vertex_key(tree, v.id));
  std::vector<std::size_t> pair_vertices;
  for (const auto& v : tree.vertices) {
    if (fiber.components_over(v.id).size() == 2) pair_vertices.push_back(v.id);
  }
  if (pair_vertices.size() > 20) throw Error(ErrorCode::InvalidArgument, "too many sheet pairs for fiber_code");

  std::string best;
  const std::uint64_t combos = std::uint64_t{1} << pair_vertices.size();
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    auto name = [&](std::size_t comp) {
      const auto& c = fiber.components[comp];
      std::string s = keys[c.base_vertex];
      if (c.sheet == Sheet::Only) return s + "o";
      const auto pos = std::find(pair_vertices.begin(), pair_vertices.end(), c.base_vertex) - pair_vertices.begin();
      const bool flip = (mask >> pos) & 1U;
      return s + (((c.sheet == Sheet::Plus) != flip) ? "+" : "-");
    };
    std::vector<std::string> parts;
    for (const auto& c : fiber.components) parts.push_back("C" + name(c.id) + "g" + std::to_string(c.genus));
    for (const auto& e : fiber.edges) {
      auto a = name(e.a);
      auto b = name(e.b);
      if (b < a) std::swap(a, b);
      parts.push_back("E" + a + "~" + b + "t" + std::to_string(e.thickness) + parity_name(e.parity));
    }
    for (std::size_t mk = 0; mk < fiber.lifted_marks.size(); ++mk) {
      parts.push_back("M" + std::to_string(mk) + "@" + name(fiber.lifted_marks[mk]));
    }
    std::sort(parts.begin(), parts.end());
    std::string code;
    for (const auto& p : parts) code += p + ";";
    if (mask == 0 || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace hypred
