// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypred/cluster_tree.hpp"
#include "hypred/fp_poly.hpp"

namespace hypred {

/// Base extension needed for the stable model of the double cover.
///
/// valuations[v] is the Gauss valuation of f on the chart of vertex v. The
/// cover extends over R when every one of them is even; otherwise a ramified
/// quadratic extension (e = 2) is required, and it always suffices.
struct ExtensionDecision {
  int e = 1;
  std::vector<std::int64_t> valuations;  // by vertex id
  std::vector<int> parities;             // valuations mod 2

  bool needs_extension() const { return e == 2; }
};

/// val(c) + sum_i min(val(center - xi), depth); equals the Gauss valuation of
/// f(center + p^depth X).
std::int64_t vertex_f_valuation(const BranchConfig& config, const TreeVertex& vertex);

ExtensionDecision decide_extension(const BranchConfig& config, const MarkedTree& tree);

enum class Sheet { Only, Plus, Minus };
enum class SplitKind { Split, Inert, NotApplicable };
const char* sheet_name(Sheet sheet);
const char* split_name(SplitKind split);

struct FiberComponent {
  std::size_t id = 0;
  std::size_t base_vertex = 0;
  Sheet sheet = Sheet::Only;
  std::vector<std::size_t> t_marks;      // marks on the base vertex
  std::vector<std::size_t> t_odd_edges;  // odd base edges at the base vertex
  int genus = 0;
  SplitKind split = SplitKind::NotApplicable;

  std::size_t t_size() const { return t_marks.size() + t_odd_edges.size(); }
};

struct FiberEdge {
  std::size_t id = 0;
  std::size_t a = 0;  // component ids, a <= b
  std::size_t b = 0;
  std::size_t base_edge = 0;
  std::int64_t thickness = 0;  // in the normalization of the extended ring
  Parity parity = Parity::Even;
};

/// Dual graph of the special fiber of the stable marked model of the curve.
/// Components are ordered by (base vertex, sheet); edges by (base edge, endpoints).
struct SpecialFiberGraph {
  std::vector<FiberComponent> components;
  std::vector<FiberEdge> edges;
  std::vector<std::size_t> lifted_marks;  // mark index -> component id

  /// Components above a base vertex (one, or the PLUS/MINUS pair).
  std::vector<std::size_t> components_over(std::size_t base_vertex) const;
  std::size_t connected_component_count() const;
  /// edges - components + connected components.
  std::int64_t betti_number() const;
  int genus_sum() const;
};

struct FiberBuildOptions {
  /// Visit neighbours in descending edge order instead of ascending.
  bool reverse_order = false;
  /// Glue PLUS to MINUS across even edges between two sheet pairs.
  bool swap_pairing = false;
  /// BFS start; defaults to the vertex carrying mark 0.
  std::optional<std::size_t> start_vertex;
};

/// Lifts the marked tree to the special fiber of the double cover.
/// Throws ThicknessParity if an odd edge has odd extended thickness.
SpecialFiberGraph build_special_fiber(const MarkedTree& tree, const std::vector<EdgeClass>& classes,
                                      const ExtensionDecision& decision, const BranchConfig& config,
                                      const FiberBuildOptions& options = {});

/// Right-hand side of the reduced equation y^2 = F(X) on the chart of a vertex.
FpPoly component_equation(const BranchConfig& config, const MarkedTree& tree, const ExtensionDecision& decision,
                          std::size_t vertex);

/// For a component with empty T: SPLIT iff the constant of F = c h^2 is a square.
/// Throws NotTwoLineComponent if F is not a constant times a square.
SplitKind split_or_inert(const FpPoly& equation, const FiberComponent& component);

/// P^1(F_p) points where y^2 = F(X) ramifies: odd-multiplicity roots plus
/// infinity when deg F is odd. Ascending, infinity last.
std::vector<P1Residue> branch_locus(const FpPoly& equation);

/// Residues of the T-set of a vertex, ascending, infinity last.
std::vector<P1Residue> t_residues(const MarkedTree& tree, const BranchConfig& config,
                                  const std::vector<EdgeClass>& classes, std::size_t vertex);

struct JacobianReport {
  std::int64_t toric_rank = 0;
  std::int64_t abelian_rank = 0;
  std::size_t n0 = 0;  // even double points of the genus-0 fiber
  std::size_t m0 = 0;  // base components without marks or odd double points
  bool potential_good = false;
};

/// Throws RankMismatch if n0 - m0 differs from the Betti number of the fiber.
JacobianReport jacobian_report(const SpecialFiberGraph& fiber, const MarkedTree& tree,
                               const std::vector<EdgeClass>& classes);

/// For every base edge, the preimage of each side is connected.
bool side_preimages_connected(const SpecialFiberGraph& fiber, const MarkedTree& tree);

/// Canonical code of the fiber over its labelled base tree, invariant under
/// exchanging the sheets of any PLUS/MINUS pair.
std::string fiber_code(const SpecialFiberGraph& fiber, const MarkedTree& tree);

}  // namespace hypred
