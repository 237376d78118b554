// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hypred/cluster_tree.hpp"

namespace hypred {

/// Stable tree with unlabelled marks: marks[v] marks sit on vertex v.
struct AbstractMarkedTree {
  std::vector<int> marks;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t vertex_count() const { return marks.size(); }
  int total_marks() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
};

/// True if the edges form a tree and every vertex has degree + marks >= 3.
bool is_stable_tree(const AbstractMarkedTree& tree);

/// Isomorphism-complete code: AHU form rooted at the center, labels are mark
/// counts; for two centers the smaller of both codes.
std::string canonical_code(const AbstractMarkedTree& tree);

/// All stable trees with 2g + 2 marks up to isomorphism, sorted by canonical code.
/// `reverse_generation` walks shapes and mark distributions in the opposite order.
/// Throws GenusTooSmall for g < 1.
std::vector<AbstractMarkedTree> enumerate_types(int g, bool reverse_generation = false);

/// Forgets mark labels and thicknesses.
AbstractMarkedTree abstract_tree(const MarkedTree& tree);

struct AbstractComponent {
  std::size_t base_vertex = 0;
  int genus = 0;
  bool pair = false;  // two rational lines exchanged by the involution
};

struct AbstractFiberEdge {
  std::size_t base_edge = 0;
  Parity parity = Parity::Even;
  int multiplicity = 1;  // preimages: 1 for odd, 2 for even
};

struct AbstractFiberType {
  std::vector<AbstractComponent> components;  // by base vertex
  std::vector<AbstractFiberEdge> edges;       // by base edge
  std::int64_t betti = 0;
  std::int64_t toric_rank = 0;
  std::int64_t abelian_rank = 0;
  std::size_t n0 = 0;
  std::size_t m0 = 0;
};

/// Special-fiber combinatorics of a type; betti is computed on the expanded
/// graph, independently of n0 - m0. Throws RankMismatch if they differ.
AbstractFiberType derive_fiber_type(const AbstractMarkedTree& tree);

}  // namespace hypred
