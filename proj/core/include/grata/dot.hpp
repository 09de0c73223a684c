// GraphViz exports. Automata are drawn as usual state diagrams (double
// circles for finals, edges labelled with symbol literals); hypergraphs draw
// binary edges as arrows and other arities as a box joined to its attachment
// nodes by numbered connectors.
#pragma once

#include "grata/automaton.hpp"
#include "grata/graph.hpp"

#include <string>

namespace grata {

std::string dot_automaton(const Automaton& a);
std::string dot_graph(const Graph& g, const std::string& name);

} // namespace grata
