// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypred/branch_config.hpp"

namespace hypred {

/// Branch points cut out by a p-adic disc.
struct Cluster {
  std::vector<std::size_t> members;  // ascending point indices, size >= 2
  std::size_t center_index = 0;      // smallest member
  Rational center;                   // points[center_index]
  std::int64_t depth = 0;            // min pairwise valuation of differences

  bool contains(std::size_t point) const;
  bool contains(const Cluster& other) const;
};

/// All proper clusters of the configuration, nested, ordered by (depth, center_index).
/// The first entry is the full point set.
std::vector<Cluster> build_cluster_hierarchy(const BranchConfig& config);

struct TreeVertex {
  std::size_t id = 0;
  Cluster cluster;
  std::vector<std::size_t> marks;  // ascending
};

/// Edges are oriented away from the root: parent is the endpoint nearer the root.
struct TreeEdge {
  std::size_t id = 0;
  std::size_t parent = 0;
  std::size_t child = 0;
  std::int64_t thickness = 0;

  std::size_t other(std::size_t v) const { return v == parent ? child : parent; }
};

/// Dual tree of the stable marked genus-0 fiber. Vertex ids are BFS order from
/// the root (root = 0); edge ids follow the discovery order of their child.
struct MarkedTree {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::size_t root = 0;

  std::vector<std::size_t> incident_edges(std::size_t v) const;
  std::size_t mark_count() const;
  /// Vertex carrying the given mark.
  std::size_t vertex_of_mark(std::size_t mark) const;
  /// Vertices on the child side of an edge (including the child).
  std::vector<std::size_t> subtree(std::size_t edge_id) const;
};

/// Reindexes an arbitrary (vertex, edge) description into BFS order from `root`.
/// Neighbours are visited in ascending order of their cluster center index.
struct LooseEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t thickness = 0;
};
MarkedTree assemble_tree(std::vector<TreeVertex> vertices, const std::vector<LooseEdge>& edges, std::size_t root);

/// Contracts the cluster hierarchy to the stable marked tree.
/// Throws InternalInstability if the result violates the tree invariants.
MarkedTree stabilize(const std::vector<Cluster>& hierarchy, const BranchConfig& config);

/// build_cluster_hierarchy followed by stabilize.
MarkedTree build_marked_tree(const BranchConfig& config);

/// Throws InternalInstability describing the first violated invariant.
void validate_marked_tree(const MarkedTree& tree, std::size_t point_count);

enum class Parity { Even, Odd };
const char* parity_name(Parity parity);

struct EdgeClass {
  std::size_t edge = 0;
  std::size_t side_mark_count = 0;  // marks on the child side
  Parity parity = Parity::Even;
};

std::vector<EdgeClass> classify_edges(const MarkedTree& tree, const BranchConfig& config);

/// A point of P^1(F_p); std::nullopt is infinity.
using P1Residue = std::optional<std::int64_t>;

struct Leg {
  enum class Kind { Mark, Edge };
  Kind kind = Kind::Mark;
  std::size_t index = 0;  // point index or edge id
  friend bool operator==(const Leg&, const Leg&) = default;
};

struct LegResidue {
  Leg leg;
  P1Residue residue;
};

/// Residues of marks and incident edges on the chart X = (x - center)/p^depth of a
/// vertex. Edges leading out of the vertex's disc map to infinity.
/// Throws ResidueCollision if two legs share a residue.
std::vector<LegResidue> mark_residues(const MarkedTree& tree, const BranchConfig& config, std::size_t vertex);

/// Canonical string for the marked weighted tree with labelled marks; equal
/// strings iff the trees are isomorphic preserving marks and thicknesses.
std::string labeled_tree_code(const MarkedTree& tree);

/// Canonical key of a vertex: its own marks plus the mark sets of each branch.
std::string vertex_key(const MarkedTree& tree, std::size_t vertex);

}  // namespace hypred
