#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ttg/oracle.hpp"
#include "ttg/textio.hpp"
#include "ttg/typefn.hpp"

// JSON documents emitted by the CLI. Every top-level document carries
// "schema": 1. Heights serialize as numbers with "inf" for infinity;
// subgroups are referenced by their canonical render, which any selector
// flag accepts back.

namespace ttg::jsonio {

using json = nlohmann::ordered_json;

inline json height_json(const Height& h) {
  if (h.is_infinite()) return json("inf");
  return json(h.finite_value());
}

inline Height height_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Height::infinity();
    throw parse_error("unparseable height '" + j.get<std::string>() + "'");
  }
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))
    return Height(j.get<Natural>());
  throw parse_error("heights must be nonnegative integers or \"inf\"");
}

inline json element_json(const GroupElement& e) {
  json a = json::array();
  for (Natural c : e.coords) a.push_back(c);
  return a;
}

inline json subgroup_entry(const std::vector<Subgroup>& list, std::size_t i) {
  const Subgroup& s = list[i];
  json gens = json::array();
  for (const auto& g : textio::minimal_generators(s)) gens.push_back(element_json(g));
  json elems = json::array();
  for (const auto& e : s.elements()) elems.push_back(element_json(e));
  return json{{"index", i},
              {"selector", "#" + std::to_string(i)},
              {"render", textio::subgroup_render(list, i)},
              {"iso", textio::render_group(s.iso_type())},
              {"order", s.order()},
              {"generators", gens},
              {"elements", elems}};
}

inline json subgroups_doc(const FiniteAbelianGroup& G, const std::vector<Subgroup>& list) {
  json subs = json::array();
  for (std::size_t i = 0; i < list.size(); ++i) subs.push_back(subgroup_entry(list, i));
  return json{{"schema", 1},
              {"group", textio::render_group(G)},
              {"order", G.order()},
              {"count", list.size()},
              {"subgroups", subs}};
}

inline json points_doc(const FiniteAbelianGroup& G, Natural p,
                       const std::vector<Subgroup>& list,
                       const std::vector<SpectrumPoint>& points) {
  json arr = json::array();
  for (const auto& pt : points) {
    const std::size_t i = subgroup_index(list, pt.subgroup());
    arr.push_back(json{{"id", textio::point_id(i, pt.height())},
                       {"subgroup", "#" + std::to_string(i)},
                       {"render", textio::subgroup_render(list, i)},
                       {"height", height_json(pt.height())}});
  }
  return json{{"schema", 1},
              {"group", textio::render_group(G)},
              {"prime", p},
              {"points", arr}};
}

inline json hasse_doc(const HasseDiagram& d) {
  json nodes = json::array();
  for (const auto& n : d.nodes)
    nodes.push_back(json{{"id", textio::point_id(n.subgroup_index, n.height)},
                         {"subgroup", "#" + std::to_string(n.subgroup_index)},
                         {"render", textio::subgroup_render(d.subgroup_list, n.subgroup_index)},
                         {"height", height_json(n.height)}});
  json edges = json::array();
  for (const auto& [a, b] : d.edges)
    edges.push_back(json{
        {"src", textio::point_id(d.nodes[a].subgroup_index, d.nodes[a].height)},
        {"dst", textio::point_id(d.nodes[b].subgroup_index, d.nodes[b].height)}});
  return json{{"schema", 1},
              {"group", textio::render_group(d.group)},
              {"prime", d.prime},
              {"cap", d.cap},
              {"nodes", nodes},
              {"edges", edges}};
}

inline std::string hasse_dot(const HasseDiagram& d) {
  std::string out = "digraph spectrum {\n";
  for (const auto& n : d.nodes) {
    out += "  " + textio::point_id(n.subgroup_index, n.height) + " [label=\"" +
           textio::point_label(d.subgroup_list, n.subgroup_index, n.height) + "\"];\n";
  }
  for (const auto& [a, b] : d.edges) {
    out += "  " + textio::point_id(d.nodes[a].subgroup_index, d.nodes[a].height) + " -> " +
           textio::point_id(d.nodes[b].subgroup_index, d.nodes[b].height) + ";\n";
  }
  out += "}\n";
  return out;
}

inline json family_doc(const Family& F) {
  const auto list = subgroups(F.ambient());
  json members = json::array();
  for (const auto& m : F.members())
    members.push_back("#" + std::to_string(subgroup_index(list, m)));
  json maximal = json::array();
  for (const auto& m : F.maximal_members()) {
    const std::size_t i = subgroup_index(list, m);
    json gens = json::array();
    for (const auto& g : textio::minimal_generators(m)) gens.push_back(element_json(g));
    maximal.push_back(json{{"subgroup", "#" + std::to_string(i)},
                           {"render", textio::subgroup_render(list, i)},
                           {"generators", gens}});
  }
  return json{{"schema", 1},
              {"group", textio::render_group(F.ambient())},
              {"size", F.size()},
              {"proper", F.is_proper()},
              {"members", members},
              {"maximal", maximal}};
}

inline json typefn_doc(const TypeFunction& f, const std::vector<Subgroup>& list) {
  json values = json::object();
  for (std::size_t i = 0; i < list.size(); ++i)
    values[textio::subgroup_render(list, i)] = height_json(f.value(i));
  return json{{"schema", 1},
              {"group", textio::render_group(f.ambient())},
              {"prime", f.prime()},
              {"typefn", values}};
}

// Accepts either a bare {"<subgroup>": height, ...} map or a full document
// with a "typefn" member. Every subgroup must receive exactly one value.
inline TypeFunction typefn_from_json(const std::string& text, const FiniteAbelianGroup& G,
                                     Natural p, const std::vector<Subgroup>& list) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("unparseable type function JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("typefn")) doc = doc["typefn"];
  if (!doc.is_object()) throw parse_error("type function must be a JSON object");

  std::vector<Height> values(list.size());
  std::vector<char> seen(list.size(), 0);
  for (const auto& [key, val] : doc.items()) {
    const std::size_t i = textio::parse_subgroup_selector(key, G, list);
    if (seen[i])
      fail("E_INVALID_TYPEFN",
           "subgroup '" + key + "' received more than one value");
    seen[i] = 1;
    values[i] = height_from_json(val);
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    if (!seen[i])
      fail("E_INVALID_TYPEFN", "missing value for subgroup '" +
                                   textio::subgroup_render(list, i) + "'");
  return TypeFunction(G, p, std::move(values));
}

inline json report_doc(const oracle::Report& report) {
  json rows = json::array();
  for (const auto& c : report.checks) {
    json row{{"check", c.check}, {"instance", c.instance}, {"pass", c.pass}};
    if (!c.detail.empty()) row["detail"] = c.detail;
    rows.push_back(row);
  }
  return json{{"schema", 1}, {"pass", report.all_pass()}, {"report", rows}};
}

}  // namespace ttg::jsonio
