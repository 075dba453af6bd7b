#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "ttg/family.hpp"
#include "ttg/spectrum.hpp"

// Textual grammar shared by the CLI and the serialization layer.
//
//   group:    Z/4xZ/2 | 4x2 | 4,2 | 1          (canonicalized on input)
//   element:  (2,1)                            (canonical coordinates)
//   height:   0, 1, 2, ... | inf
//   subgroup: trivial | full | #3 | gen:(2,1),(0,1) | iso render if unique
//   point:    <subgroup>@<height>
//   family:   proper | below:<subgroup> | rank<=m | {gens;gens;...} | {}

namespace ttg::textio {

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline Natural parse_natural(const std::string& token) {
  if (token.empty()) throw parse_error("expected a number, found nothing");
  for (char c : token)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw parse_error("expected a number, found '" + token + "'");
  return std::stoull(token);
}

}  // namespace detail

inline std::string render_group(const FiniteAbelianGroup& G) {
  if (G.is_trivial()) return "1";
  std::string out;
  for (std::size_t i = 0; i < G.invariant_factors().size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(G.invariant_factors()[i]);
  }
  return out;
}

inline FiniteAbelianGroup parse_group(const std::string& spec) {
  const std::string s = detail::strip_spaces(spec);
  if (s.empty()) throw parse_error("empty group spec");
  if (s == "1") return FiniteAbelianGroup();
  const char sep = s.find(',') != std::string::npos ? ',' : 'x';
  std::vector<std::int64_t> factors;
  for (const std::string& raw : detail::split_top_level(s, sep)) {
    std::string token = raw;
    if (token.rfind("Z/", 0) == 0) token = token.substr(2);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("unparseable group token '" + raw + "'");
    factors.push_back(static_cast<std::int64_t>(std::stoll(token)));
  }
  return FiniteAbelianGroup::canonicalize(factors);
}

inline std::string render_element(const GroupElement& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e.coords[i]);
  }
  return out + ")";
}

inline GroupElement parse_element(const std::string& spec) {
  const std::string s = detail::strip_spaces(spec);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw parse_error("unparseable element '" + spec + "' (expected e.g. (2,1))");
  const std::string body = s.substr(1, s.size() - 2);
  GroupElement e;
  if (body.empty()) return e;
  for (const std::string& token : detail::split_top_level(body, ','))
    e.coords.push_back(detail::parse_natural(token));
  return e;
}

inline std::string render_height(const Height& h) { return h.str(); }

inline Height parse_height(const std::string& spec) {
  const std::string s = detail::strip_spaces(spec);
  if (s == "inf") return Height::infinity();
  return Height(detail::parse_natural(s));
}

// Canonical subgroup rendering: the isomorphism type when it identifies the
// subgroup uniquely within the ambient lattice, otherwise "#<index>".
inline std::string subgroup_render(const std::vector<Subgroup>& list, std::size_t index) {
  const std::string iso = render_group(list[index].iso_type());
  unsigned matches = 0;
  for (const auto& s : list)
    if (render_group(s.iso_type()) == iso) ++matches;
  return matches == 1 ? iso : "#" + std::to_string(index);
}

// Deterministic small generating set: scan elements by descending order and
// ascending coordinates, keeping those that enlarge the span.
inline std::vector<GroupElement> minimal_generators(const Subgroup& s) {
  const FiniteAbelianGroup& G = s.ambient();
  std::vector<GroupElement> by_order = s.elements();
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](const GroupElement& a, const GroupElement& b) {
                     return G.element_order(a) > G.element_order(b);
                   });
  std::vector<GroupElement> gens;
  Subgroup span = trivial_subgroup(G);
  for (const auto& e : by_order) {
    if (span.order() == s.order()) break;
    if (span.contains_element(e)) continue;
    gens.push_back(e);
    span = subgroup_from_generators(G, gens);
  }
  return gens;
}

inline std::size_t parse_subgroup_selector(const std::string& spec,
                                           const FiniteAbelianGroup& G,
                                           const std::vector<Subgroup>& list) {
  const std::string s = detail::strip_spaces(spec);
  if (s.empty()) throw parse_error("empty subgroup selector");
  if (s == "trivial") return 0;
  if (s == "full") return list.size() - 1;
  if (s[0] == '#') {
    const std::size_t idx = detail::parse_natural(s.substr(1));
    if (idx >= list.size())
      throw parse_error("subgroup index '" + s + "' out of range (" +
                        std::to_string(list.size()) + " subgroups)");
    return idx;
  }
  if (s.rfind("gen:", 0) == 0) {
    std::vector<GroupElement> gens;
    const std::string body = s.substr(4);
    if (!body.empty())
      for (const std::string& token : detail::split_top_level(body, ','))
        gens.push_back(parse_element(token));
    return subgroup_index(list, subgroup_from_generators(G, gens));
  }
  // isomorphism-type rendering, accepted when unambiguous
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (render_group(list[i].iso_type()) != s) continue;
    if (found) throw parse_error("subgroup selector '" + spec + "' is ambiguous; use #index");
    found = i;
  }
  if (!found) throw parse_error("unknown subgroup selector '" + spec + "'");
  return *found;
}

inline std::string point_id(std::size_t subgroup_index, const Height& h) {
  return "s" + std::to_string(subgroup_index) + "_h" + h.str();
}

inline std::string point_label(const std::vector<Subgroup>& list, std::size_t subgroup_index,
                               const Height& h) {
  return "P(" + subgroup_render(list, subgroup_index) + ", " + h.str() + ")";
}

inline SpectrumPoint parse_point(const std::string& spec, const FiniteAbelianGroup& G,
                                 const std::vector<Subgroup>& list, Natural p) {
  const std::string s = detail::strip_spaces(spec);
  const auto at = s.rfind('@');
  if (at == std::string::npos)
    throw parse_error("unparseable point '" + spec + "' (expected <subgroup>@<height>)");
  const std::size_t idx = parse_subgroup_selector(s.substr(0, at), G, list);
  return SpectrumPoint(list[idx], p, parse_height(s.substr(at + 1)));
}

// Family literals. The rank<=m form needs the prime.
inline Family parse_family(const std::string& spec, const FiniteAbelianGroup& G,
                           std::optional<Natural> p) {
  const std::string s = detail::strip_spaces(spec);
  if (s.empty()) throw parse_error("empty family literal");
  if (s == "proper") return Family::proper_subgroups(G);
  if (s == "empty") return Family::empty(G);
  if (s.rfind("rank<=", 0) == 0) {
    if (!p) throw parse_error("family literal 'rank<=m' requires a prime (-p)");
    return Family::rank_at_most(G, *p, static_cast<unsigned>(detail::parse_natural(s.substr(6))));
  }
  if (s.rfind("below:", 0) == 0) {
    const auto list = subgroups(G);
    return Family::below(list[parse_subgroup_selector(s.substr(6), G, list)]);
  }
  if (s.front() == '{' && s.back() == '}') {
    const std::string body = s.substr(1, s.size() - 2);
    std::vector<Subgroup> seed;
    if (!body.empty()) {
      const auto list = subgroups(G);
      for (const std::string& token : detail::split_top_level(body, ';')) {
        if (!token.empty() && (token[0] == '(')) {
          std::vector<GroupElement> gens;
          for (const std::string& t : detail::split_top_level(token, ','))
            gens.push_back(parse_element(t));
          seed.push_back(subgroup_from_generators(G, gens));
        } else {
          seed.push_back(list[parse_subgroup_selector(token, G, list)]);
        }
      }
    }
    return Family::closure_of(G, seed);
  }
  throw parse_error("unparseable family literal '" + spec + "'");
}

}  // namespace ttg::textio
