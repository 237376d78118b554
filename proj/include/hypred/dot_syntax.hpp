// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hypred {

using DotAttributes = std::map<std::string, std::string>;

struct DotNode {
  std::string id;
  DotAttributes attributes;
};

struct DotEdge {
  std::string tail;
  std::string head;
  DotAttributes attributes;
};

/// Parsed DOT graph. Default `node [...]` / `edge [...]` attributes are folded
/// into the statements that follow them.
struct DotGraph {
  bool strict = false;
  bool directed = false;
  std::string name;
  std::vector<DotNode> nodes;  // explicit node statements, in order
  std::vector<DotEdge> edges;
};

/// Parses the DOT language (graph/digraph, node, edge, attribute and
/// subgraph statements, quoted and HTML-free IDs, comments).
/// Throws ParseError with line and column on the first syntax error.
DotGraph parse_dot(std::string_view text);

}  // namespace hypred
