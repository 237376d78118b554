// SPDX-License-Identifier: Apache-2.0
#include "hypred/serialize.hpp"

#include <sstream>

#include "json.hpp"

namespace hypred {

namespace {

using nlohmann::ordered_json;

std::string vid(std::size_t id) { return "v" + std::to_string(id); }
std::string eid(std::size_t id) { return "e" + std::to_string(id); }
std::string cid(std::size_t id) { return "c" + std::to_string(id); }
std::string fid(std::size_t id) { return "f" + std::to_string(id); }

ordered_json input_json(const RawInput& input) { return ordered_json::parse(input_to_json(input)); }

ordered_json tree_json(const ReductionReport& r) {
  ordered_json vertices = ordered_json::array();
  for (const auto& v : r.tree.vertices) {
    ordered_json item;
    item["id"] = vid(v.id);
    item["center"] = v.cluster.center.to_string();
    item["center_index"] = v.cluster.center_index;
    item["depth"] = v.cluster.depth;
    item["cluster"] = v.cluster.members;
    item["marks"] = v.marks;
    vertices.push_back(std::move(item));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : r.tree.edges) {
    const auto& ec = r.edge_classes.at(e.id);
    ordered_json item;
    item["id"] = eid(e.id);
    item["parent"] = vid(e.parent);
    item["child"] = vid(e.child);
    item["thickness"] = e.thickness;
    item["extended_thickness"] = r.decision.e * e.thickness;
    item["side_mark_count"] = ec.side_mark_count;
    item["parity"] = parity_name(ec.parity);
    edges.push_back(std::move(item));
  }
  ordered_json out;
  out["root"] = vid(r.tree.root);
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  return out;
}

ordered_json fiber_json(const ReductionReport& r) {
  ordered_json components = ordered_json::array();
  for (const auto& c : r.fiber.components) {
    ordered_json t_odd = ordered_json::array();
    for (auto e : c.t_odd_edges) t_odd.push_back(eid(e));
    ordered_json item;
    item["id"] = cid(c.id);
    item["base_vertex"] = vid(c.base_vertex);
    item["sheet"] = sheet_name(c.sheet);
    item["genus"] = c.genus;
    item["T"] = {{"marks", c.t_marks}, {"odd_edges", std::move(t_odd)}};
    item["split"] = split_name(c.split);
    item["equation"] = r.equation_of_component(c.id).to_string();
    components.push_back(std::move(item));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : r.fiber.edges) {
    ordered_json item;
    item["id"] = fid(e.id);
    item["components"] = {cid(e.a), cid(e.b)};
    item["base_edge"] = eid(e.base_edge);
    item["thickness"] = e.thickness;
    item["parity"] = parity_name(e.parity);
    edges.push_back(std::move(item));
  }
  ordered_json marks = ordered_json::array();
  for (std::size_t m = 0; m < r.fiber.lifted_marks.size(); ++m) marks.push_back(cid(r.fiber.lifted_marks[m]));
  ordered_json out;
  out["components"] = std::move(components);
  out["edges"] = std::move(edges);
  out["marks"] = std::move(marks);
  out["betti_number"] = r.fiber.betti_number();
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

void mark_leaf(std::ostringstream& os, std::size_t mark) {
  os << "  P" << mark << " [shape=point, label=\"P" << mark << "\", xlabel=\"P" << mark << "\"];\n";
}

}  // namespace

std::string emit_json(const ReductionReport& r) {
  ordered_json doc;
  doc["schema_version"] = "1";
  doc["input"] = input_json(r.input);
  doc["prime"] = r.config.p.value();
  doc["genus"] = r.config.genus;

  ordered_json norm;
  norm["inverted"] = r.config.trace.inverted;
  norm["shift"] = r.config.trace.inverted ? ordered_json(r.config.trace.shift.to_string()) : ordered_json(nullptr);
  norm["infinity_index"] =
      r.config.trace.infinity_index ? ordered_json(*r.config.trace.infinity_index) : ordered_json(nullptr);
  norm["c"] = r.config.c.to_string();
  ordered_json points = ordered_json::array();
  for (const auto& q : r.config.points) points.push_back(q.to_string());
  norm["points"] = std::move(points);
  doc["normalized"] = std::move(norm);

  doc["marked_tree"] = tree_json(r);

  ordered_json ext;
  ext["e"] = r.decision.e;
  ext["criterion"] = "gauss_valuation_parity";
  ordered_json vals = ordered_json::array();
  for (std::size_t v = 0; v < r.decision.valuations.size(); ++v) {
    vals.push_back({{"vertex", vid(v)}, {"valuation", r.decision.valuations[v]}, {"parity", r.decision.parities[v]}});
  }
  ext["vertex_valuations"] = std::move(vals);
  doc["extension"] = std::move(ext);

  doc["special_fiber"] = fiber_json(r);

  ordered_json jac;
  jac["toric_rank"] = r.jacobian.toric_rank;
  jac["abelian_rank"] = r.jacobian.abelian_rank;
  jac["n0"] = r.jacobian.n0;
  jac["m0"] = r.jacobian.m0;
  jac["potential_good"] = r.jacobian.potential_good;
  doc["jacobian"] = std::move(jac);

  ordered_json flags;
  flags["marked_genus0_good_reduction"] = r.flags.marked_genus0_good_reduction;
  flags["good_reduction_over_K"] = r.flags.good_reduction_over_K;
  flags["good_reduction_after_extension"] = r.flags.good_reduction_after_extension;
  doc["flags"] = std::move(flags);
  return doc.dump(2) + "\n";
}

std::string emit_dot(const MarkedTree& tree) {
  std::ostringstream os;
  os << "graph marked_tree {\n  node [shape=circle];\n";
  for (const auto& v : tree.vertices) os << "  " << vid(v.id) << " [label=\"\"];\n";
  for (const auto& v : tree.vertices) {
    for (auto m : v.marks) mark_leaf(os, m);
  }
  for (const auto& v : tree.vertices) {
    for (auto m : v.marks) os << "  " << vid(v.id) << " -- P" << m << " [style=dashed];\n";
  }
  for (const auto& e : tree.edges) {
    os << "  " << vid(e.parent) << " -- " << vid(e.child) << " [label=\"" << e.thickness << "\"";
    const auto& child = tree.subtree(e.id);
    std::size_t side = 0;
    for (auto w : child) side += tree.vertices[w].marks.size();
    if (side % 2 == 0) os << ", parity=even";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const SpecialFiberGraph& fiber) {
  std::ostringstream os;
  os << "graph special_fiber {\n  node [shape=circle];\n";
  for (const auto& c : fiber.components) {
    const std::string label = c.genus == 0 ? "" : "g=" + std::to_string(c.genus);
    os << "  " << cid(c.id) << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (std::size_t m = 0; m < fiber.lifted_marks.size(); ++m) mark_leaf(os, m);
  for (std::size_t m = 0; m < fiber.lifted_marks.size(); ++m) {
    os << "  " << cid(fiber.lifted_marks[m]) << " -- P" << m << " [style=dashed];\n";
  }
  for (const auto& e : fiber.edges) {
    os << "  " << cid(e.a) << " -- " << cid(e.b) << " [label=\"" << e.thickness << "\"";
    if (e.parity == Parity::Even) os << ", parity=even";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_atlas_json(int g, const std::vector<AbstractMarkedTree>& types) {
  ordered_json list = ordered_json::array();
  for (const auto& t : types) {
    const auto fiber = derive_fiber_type(t);
    ordered_json vertices = ordered_json::array();
    for (std::size_t v = 0; v < t.vertex_count(); ++v) vertices.push_back({{"id", vid(v)}, {"marks", t.marks[v]}});
    ordered_json edges = ordered_json::array();
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
      edges.push_back({{"id", eid(k)}, {"ends", {vid(t.edges[k].first), vid(t.edges[k].second)}},
                       {"parity", parity_name(fiber.edges[k].parity)}});
    }
    ordered_json comps = ordered_json::array();
    for (const auto& c : fiber.components) {
      comps.push_back({{"base_vertex", vid(c.base_vertex)}, {"genus", c.genus}, {"pair", c.pair}});
    }
    ordered_json fedges = ordered_json::array();
    for (const auto& e : fiber.edges) fedges.push_back({{"base_edge", eid(e.base_edge)}, {"multiplicity", e.multiplicity}});
    ordered_json item;
    item["code"] = canonical_code(t);
    item["vertices"] = std::move(vertices);
    item["edges"] = std::move(edges);
    item["fiber"] = {{"components", std::move(comps)},
                     {"edges", std::move(fedges)},
                     {"betti_number", fiber.betti},
                     {"toric_rank", fiber.toric_rank},
                     {"abelian_rank", fiber.abelian_rank},
                     {"n0", fiber.n0},
                     {"m0", fiber.m0}};
    list.push_back(std::move(item));
  }
  ordered_json doc;
  doc["schema_version"] = "1";
  doc["genus"] = g;
  doc["marks"] = 2 * g + 2;
  doc["count"] = types.size();
  doc["types"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string summary_text(const ReductionReport& r) {
  std::ostringstream os;
  os << "p = " << r.config.p.value() << ", genus " << r.config.genus << "\n";
  os << "marked tree: " << r.tree.vertices.size() << " vertices, " << r.tree.edges.size() << " edges\n";
  for (const auto& e : r.tree.edges) {
    os << "  " << eid(e.id) << ": " << vid(e.parent) << " -- " << vid(e.child) << ", thickness " << e.thickness << ", "
       << parity_name(r.edge_classes[e.id].parity) << "\n";
  }
  os << "extension: e = " << r.decision.e << "\n";
  os << "special fiber: " << r.fiber.components.size() << " components, " << r.fiber.edges.size() << " double points\n";
  for (const auto& c : r.fiber.components) {
    os << "  " << cid(c.id) << " over " << vid(c.base_vertex) << " (" << sheet_name(c.sheet) << "), genus " << c.genus
       << ", y^2 = " << r.equation_of_component(c.id).to_string() << "\n";
  }
  os << "jacobian: toric rank " << r.jacobian.toric_rank << ", abelian rank " << r.jacobian.abelian_rank
     << (r.jacobian.potential_good ? ", potentially good" : "") << "\n";
  os << "good reduction over K: " << (r.flags.good_reduction_over_K ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace hypred
