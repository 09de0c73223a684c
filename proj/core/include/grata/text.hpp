// Text formats: graphs, automata, regular expressions. All formats are
// UTF-8 with `#` line comments and insignificant whitespace.
//
//   graph star {            alphabet { a:2 b:2 }        alphabet { a:2 b:2 }
//     nodes w x y z ;       automaton S {               regex stars {
//     front w ;               init q0:1 ;                 a[1|1] a[1|1] (a[1|1])* b[1|2] ;
//     rear  y ;               state q1:1 ;              }
//     edge a ( w x ) ;        final q2:1 ;
//     ...                     q0 -> q1 : a[1|1] ;
//   }                       }
#pragma once

#include "grata/automaton.hpp"
#include "grata/graph.hpp"
#include "grata/regex.hpp"

#include <stdexcept>
#include <string>

namespace grata {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

/// Syntax only; identifier resolution happens in build_graph.
GraphDraft parse_graph_draft(const std::string& text);

/// Parse + validate + build. `sigma` may be null (ranks are then inferred).
Graph parse_graph(const std::string& text, const RankedAlphabet* sigma = nullptr);

std::string serialize_graph(const Graph& g, const std::string& name);

/// Parses an automaton file (alphabet block + automaton block). Symbol
/// literals are resolved against the declared alphabet; structural problems
/// beyond syntax are reported via validate_automaton by the caller.
Automaton parse_automaton(const std::string& text);

std::string serialize_automaton(const Automaton& a,
                                const std::vector<std::string>& comments = {});

struct RegexFile {
    std::string name;
    RankedAlphabet alphabet;
    RegexPtr expr;
};

RegexFile parse_regex_file(const std::string& text);

/// "graph", "automaton" or "regex", judged by the first keyword.
std::string sniff_format(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace grata
