// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hypred/branch_config.hpp"
#include "hypred/cluster_tree.hpp"
#include "hypred/covering.hpp"
#include "hypred/fp_poly.hpp"
#include "hypred/raw_input.hpp"

namespace hypred {

struct ReductionFlags {
  /// The stable marked genus-0 curve has a single component.
  bool marked_genus0_good_reduction = false;
  /// Single component and no extension needed.
  bool good_reduction_over_K = false;
  /// Single component; good reduction after the degree-2 extension.
  bool good_reduction_after_extension = false;
};

/// Everything computed for one curve.
struct ReductionReport {
  RawInput input;
  BranchConfig config;
  MarkedTree tree;
  std::vector<EdgeClass> edge_classes;  // by edge id
  ExtensionDecision decision;
  SpecialFiberGraph fiber;
  JacobianReport jacobian;
  std::vector<FpPoly> vertex_equations;  // reduced right-hand side, by base vertex id
  ReductionFlags flags;

  const FpPoly& equation_of_component(std::size_t component) const {
    return vertex_equations.at(fiber.components.at(component).base_vertex);
  }
};

/// Full pipeline. Deterministic; throws the input errors of to_branch_config and
/// internal errors when a consistency check fails.
ReductionReport analyze(const RawInput& input);

/// Same pipeline on an already normalized configuration; `input` is only echoed.
ReductionReport analyze_config(const RawInput& input, const BranchConfig& config);

}  // namespace hypred
