// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hypred/cluster_tree.hpp"

namespace hypred {

/// Reference construction of the stable marked tree, independent of the
/// cluster hierarchy: vertices are the medians of all point triples in the
/// tree of p-adic discs, marks attach to the nearest median, and two medians
/// are adjacent when no third median lies on the path between them.
/// Roughly O(n^4); intended for cross-checking stabilize().
MarkedTree naive_tree_oracle(const BranchConfig& config);

}  // namespace hypred
