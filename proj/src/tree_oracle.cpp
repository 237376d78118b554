// SPDX-License-Identifier: Apache-2.0
#include "hypred/tree_oracle.hpp"

#include <algorithm>
#include <limits>

namespace hypred {

namespace {

// Closed disc {x : val(x - center) >= radius}, identified by radius and the
// branch points it contains.
struct Disc {
  std::size_t center_index;
  std::int64_t radius;
  std::vector<std::size_t> members;
};

ValInt distance_valuation(const BranchConfig& cfg, std::size_t i, std::size_t j) {
  return val(cfg.points[i] - cfg.points[j], cfg.p);
}

// Path length between two discs in the tree of discs.
std::int64_t disc_distance(const BranchConfig& cfg, const Disc& a, const Disc& b) {
  std::int64_t join = std::min(a.radius, b.radius);
  const ValInt v = distance_valuation(cfg, a.center_index, b.center_index);
  if (!v.is_infinite()) join = std::min(join, v.value());
  return (a.radius - join) + (b.radius - join);
}

Disc make_disc(const BranchConfig& cfg, std::size_t center, std::int64_t radius) {
  Disc d{center, radius, {}};
  for (std::size_t k = 0; k < cfg.point_count(); ++k) {
    if (distance_valuation(cfg, center, k) >= ValInt(radius)) d.members.push_back(k);
  }
  d.center_index = d.members.front();
  return d;
}

}  // namespace

MarkedTree naive_tree_oracle(const BranchConfig& config) {
  const std::size_t n = config.point_count();
  std::vector<Disc> medians;
  std::int64_t deepest = std::numeric_limits<std::int64_t>::min();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      deepest = std::max(deepest, distance_valuation(config, i, j).value());
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::int64_t ij = distance_valuation(config, i, j).value();
        const std::int64_t ik = distance_valuation(config, i, k).value();
        const std::int64_t jk = distance_valuation(config, j, k).value();
        // The median of three leaves is the join of the closest pair.
        std::size_t anchor = i;
        std::int64_t radius = ij;
        if (ik > radius) radius = ik;
        if (jk > radius) {
          radius = jk;
          anchor = j;
        }
        Disc d = make_disc(config, anchor, radius);
        const bool known = std::any_of(medians.begin(), medians.end(), [&](const Disc& e) {
          return e.radius == d.radius && e.members == d.members;
        });
        if (!known) medians.push_back(std::move(d));
      }
    }
  }

  std::vector<TreeVertex> vertices;
  for (const auto& d : medians) {
    Cluster c;
    c.members = d.members;
    c.center_index = d.center_index;
    c.center = config.points[d.center_index];
    c.depth = d.radius;
    vertices.push_back(TreeVertex{0, std::move(c), {}});
  }

  // Leaves sit deeper than any median; each mark joins its nearest median.
  const std::int64_t leaf_radius = deepest + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Disc leaf{k, leaf_radius, {k}};
    std::size_t best = 0;
    std::int64_t best_dist = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = 0; v < medians.size(); ++v) {
      const auto dist = disc_distance(config, leaf, medians[v]);
      if (dist < best_dist) {
        best_dist = dist;
        best = v;
      }
    }
    vertices[best].marks.push_back(k);
  }

  std::vector<LooseEdge> edges;
  for (std::size_t u = 0; u < medians.size(); ++u) {
    for (std::size_t v = u + 1; v < medians.size(); ++v) {
      const auto duv = disc_distance(config, medians[u], medians[v]);
      bool blocked = false;
      for (std::size_t w = 0; w < medians.size() && !blocked; ++w) {
        if (w == u || w == v) continue;
        blocked = disc_distance(config, medians[u], medians[w]) + disc_distance(config, medians[w], medians[v]) == duv;
      }
      if (!blocked) edges.push_back({u, v, duv});
    }
  }

  std::size_t root = 0;
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    const auto& a = vertices[k].cluster;
    const auto& b = vertices[root].cluster;
    if (std::tie(a.depth, a.center_index) < std::tie(b.depth, b.center_index)) root = k;
  }
  return assemble_tree(std::move(vertices), edges, root);
}

}  // namespace hypred
