#include "vmirror/graph_io.hpp"

namespace vmirror {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view scope_of(const ActorId& a, const std::map<ActorId, ActorAttrs>& attrs) {
  auto it = attrs.find(a);
  return to_string(it == attrs.end() ? Scope::ecosystem : it->second.scope);
}

}  // namespace

void write_graphml(std::ostream& out, const InteractionGraph& g, const std::map<ActorId, ActorAttrs>& attrs) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"scope\" for=\"node\" attr.name=\"scope\" attr.type=\"string\"/>\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
         "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const auto& n : g.nodes())
    out << "    <node id=\"" << xml_escape(n.value) << "\"><data key=\"scope\">" << scope_of(n, attrs)
        << "</data></node>\n";
  for (const auto& [arc, w] : g.arcs())
    out << "    <edge source=\"" << xml_escape(arc.first.value) << "\" target=\""
        << xml_escape(arc.second.value) << "\"><data key=\"weight\">" << w << "</data></edge>\n";
  out << "  </graph>\n</graphml>\n";
}

void write_dot(std::ostream& out, const InteractionGraph& g, const std::map<ActorId, ActorAttrs>& attrs) {
  out << "digraph G {\n";
  for (const auto& n : g.nodes())
    out << "  " << dot_quote(n.value) << " [scope=" << dot_quote(scope_of(n, attrs)) << "];\n";
  for (const auto& [arc, w] : g.arcs())
    out << "  " << dot_quote(arc.first.value) << " -> " << dot_quote(arc.second.value)
        << " [weight=" << w << "];\n";
  out << "}\n";
}

}  // namespace vmirror
