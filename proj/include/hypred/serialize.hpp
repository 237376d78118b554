// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "hypred/atlas.hpp"
#include "hypred/report.hpp"

namespace hypred {

/// Canonical JSON document (schema_version "1"), two-space indented, with a
/// trailing newline. Identical reports give identical bytes.
std::string emit_json(const ReductionReport& report);

/// Undirected DOT rendering of the marked tree; mark leaves hang off their vertex.
std::string emit_dot(const MarkedTree& tree);
/// Undirected DOT rendering of the special-fiber dual graph.
std::string emit_dot(const SpecialFiberGraph& fiber);

/// Atlas catalog for one genus, with the fiber type of every entry.
std::string emit_atlas_json(int g, const std::vector<AbstractMarkedTree>& types);

/// Human-readable summary for the terminal.
std::string summary_text(const ReductionReport& report);

}  // namespace hypred
