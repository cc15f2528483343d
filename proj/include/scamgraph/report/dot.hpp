#pragma once

#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace scamgraph::dot {

using nlohmann::json;

/// Fill colour for a node with the given role names. Scammer wins over every
/// other role, then coordinator, wash trader, transferrer, depositor.
inline const char* role_color(const std::set<std::string>& roles, bool is_public) {
  if (is_public) return "green";
  if (roles.count("scammer")) return "red";
  if (roles.count("coordinator")) return "purple";
  if (roles.count("wash_trader")) return "orange";
  if (roles.count("transferrer")) return "yellow";
  if (roles.count("depositor")) return "blue";
  if (roles.count("withdrawer")) return "lightblue";
  if (roles.count("boundary")) return "grey";
  return "white";
}

inline std::string short_hex(const std::string& a) { return a.size() > 10 ? a.substr(0, 6) + ".." + a.substr(a.size() - 4) : a; }

/// One digraph from a network stage record.
inline std::string network(const json& rec, const std::string& name = "network") {
  std::ostringstream o;
  o << "digraph \"" << name << "\" {\n  node [style=filled, shape=ellipse, fontname=\"monospace\"];\n";
  for (const auto& n : rec.at("nodes")) {
    std::set<std::string> roles;
    for (const auto& r : n.at("roles")) roles.insert(r.get<std::string>());
    bool pub = n.contains("public_label");
    std::string label = short_hex(n.at("address").get<std::string>());
    if (pub) label += "\\n" + n.at("public_label").get<std::string>();
    std::string role_list;
    for (const auto& r : roles) role_list += (role_list.empty() ? "" : ",") + r;
    o << "  \"" << n.at("address").get<std::string>() << "\" [label=\"" << label << "\\n" << role_list
      << "\", fillcolor=" << role_color(roles, pub) << "];\n";
  }
  for (const auto& e : rec.at("edges"))
    o << "  \"" << e.at("from").get<std::string>() << "\" -> \"" << e.at("to").get<std::string>() << "\" [tooltip=\""
      << e.at("tx").get<std::string>() << "\"];\n";
  o << "}\n";
  return o.str();
}

/// One undirected graph from a cluster stage record; all members are scammers.
inline std::string cluster(const json& rec) {
  std::ostringstream o;
  o << "graph \"cluster_" << rec.at("id").get<std::size_t>()
    << "\" {\n  node [style=filled, fillcolor=red, shape=ellipse, fontname=\"monospace\"];\n";
  for (const auto& m : rec.at("members"))
    o << "  \"" << m.get<std::string>() << "\" [label=\"" << short_hex(m.get<std::string>()) << "\"];\n";
  for (const auto& e : rec.at("edges"))
    o << "  \"" << e.at(0).get<std::string>() << "\" -- \"" << e.at(1).get<std::string>() << "\""
      << (e.at(2).get<std::string>() == "co_pool" ? " [style=dashed]" : "") << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace scamgraph::dot
