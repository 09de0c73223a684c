// Typed regular expressions over graph symbols and their compilation into
// finite automata. Concatenation glue is realized with identity-blank
// transitions, so compiled automata stay well typed but usually need a
// determinization pass before analysis.
#pragma once

#include "grata/automaton.hpp"

#include <memory>
#include <string>
#include <vector>

namespace grata {

struct Regex;
using RegexPtr = std::unique_ptr<Regex>;

struct Regex {
    enum class Kind { Symbol, Concat, Union, Star, Plus };
    Kind kind = Kind::Symbol;
    TypedSymbol symbol;             // Kind::Symbol
    std::vector<RegexPtr> children; // Concat/Union (>=2), Star/Plus (1)
    std::string text;               // source slice, used in error messages
};

/// (front rank, rear rank) of the denoted language; throws on ill-typed
/// subexpressions, naming the offending slice.
std::pair<unsigned, unsigned> regex_type(const Regex& e);

/// Parses `symbol literals, juxtaposition or '.' for concatenation, '|' for
/// union, '*' and '+', parentheses` against the given alphabet.
RegexPtr parse_regex(const std::string& text, const RankedAlphabet& sigma);

/// Thompson-style compilation. The result is validated before returning.
Automaton from_regex(const Regex& e, const RankedAlphabet& sigma, const std::string& name);

} // namespace grata
