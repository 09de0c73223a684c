#include "grata/dot.hpp"

#include <sstream>

namespace grata {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string dot_automaton(const Automaton& a) {
    std::ostringstream out;
    out << "digraph " << quote(a.name.empty() ? "automaton" : a.name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  __start [shape=none, label=\"\"];\n";
    for (const State& s : a.states) {
        out << "  " << quote(s.name) << " [shape=" << (a.is_final(s.name) ? "doublecircle" : "circle")
            << ", label=" << quote(s.name + ":" + std::to_string(s.rank)) << "];\n";
    }
    out << "  __start -> " << quote(a.initial) << ";\n";
    for (const Transition& t : a.transitions)
        out << "  " << quote(t.from) << " -> " << quote(t.to)
            << " [label=" << quote(t.symbol.to_string()) << "];\n";
    out << "}\n";
    return out.str();
}

std::string dot_graph(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << quote(name.empty() ? "graph" : name) << " {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::string label = g.node_name(v);
        for (std::size_t i = 0; i < g.front().size(); ++i)
            if (g.front()[i] == v) label += "\\nf" + std::to_string(i + 1);
        for (std::size_t i = 0; i < g.rear().size(); ++i)
            if (g.rear()[i] == v) label += "\\nr" + std::to_string(i + 1);
        out << "  n" << v << " [shape=circle, label=" << quote(label) << "];\n";
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (edge.att.size() == 2) {
            out << "  n" << edge.att[0] << " -> n" << edge.att[1]
                << " [label=" << quote(edge.label) << "];\n";
        } else {
            out << "  e" << e << " [shape=box, label=" << quote(edge.label) << "];\n";
            for (unsigned k = 0; k < edge.att.size(); ++k)
                out << "  e" << e << " -> n" << edge.att[k] << " [label=\"" << (k + 1)
                    << "\", arrowhead=none];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace grata
