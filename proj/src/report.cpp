// SPDX-License-Identifier: Apache-2.0
#include "hypred/report.hpp"

#include "hypred/error.hpp"

namespace hypred {

namespace {

std::string residues_text(const std::vector<P1Residue>& rs) {
  std::string s = "{";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i > 0) s += ",";
    s += rs[i] ? std::to_string(*rs[i]) : "inf";
  }
  return s + "}";
}

}  // namespace

ReductionReport analyze(const RawInput& input) { return analyze_config(input, to_branch_config(input)); }

ReductionReport analyze_config(const RawInput& input, const BranchConfig& config) {
  MarkedTree tree = build_marked_tree(config);
  validate_marked_tree(tree, config.point_count());
  auto classes = classify_edges(tree, config);
  auto decision = decide_extension(config, tree);
  auto fiber = build_special_fiber(tree, classes, decision, config);
  auto jacobian = jacobian_report(fiber, tree, classes);

  std::vector<FpPoly> equations;
  for (const auto& v : tree.vertices) {
    equations.push_back(component_equation(config, tree, decision, v.id));
    const auto locus = branch_locus(equations.back());
    const auto expected = t_residues(tree, config, classes, v.id);
    if (locus != expected) {
      throw Error(ErrorCode::InvariantViolation, "branch locus " + residues_text(locus) + " of vertex v" +
                                                     std::to_string(v.id) + " differs from T residues " +
                                                     residues_text(expected));
    }
  }

  ReductionFlags flags;
  flags.marked_genus0_good_reduction = tree.vertices.size() == 1;
  flags.good_reduction_over_K = flags.marked_genus0_good_reduction && decision.e == 1;
  flags.good_reduction_after_extension = flags.marked_genus0_good_reduction;

  return ReductionReport{
      .input = input,
      .config = config,
      .tree = std::move(tree),
      .edge_classes = std::move(classes),
      .decision = std::move(decision),
      .fiber = std::move(fiber),
      .jacobian = jacobian,
      .vertex_equations = std::move(equations),
      .flags = flags,
  };
}

}  // namespace hypred
