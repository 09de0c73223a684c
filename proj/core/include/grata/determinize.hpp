// Blank closures, the modified powerset construction, and ambiguity removal.
//
// The construction tracks (blank, state) pairs instead of bare states: a pair
// (β, q) in a powerset state means q is reachable after reading β. Candidate
// successor sets are quotiented against existing states modulo a permutation
// blank, which keeps the construction finite and the output small.
#pragma once

#include "grata/automaton.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace grata {

struct PSPair {
    TypedSymbol blank;
    std::string state;
    auto operator<=>(const PSPair&) const = default;
};

using PSPairSet = std::vector<PSPair>; // kept sorted, duplicate-free

/// All (blank, state) pairs reachable from q through blank transitions, the
/// blanks composed along the way. Always contains (identity blank, q).
PSPairSet closure(const Automaton& a, const std::string& q);

/// Composes beta onto the blank of every pair. beta must be of type (i,i)
/// where i is the common front rank of the pairs.
PSPairSet left_compose_state(const TypedSymbol& beta, const PSPairSet& c);

/// Searches `existing` (in insertion order) for a state Y' of rank j and a
/// permutation blank beta' with left_compose_state(beta', Y') == y.
struct PSState {
    std::string name;
    PSPairSet pairs;
    unsigned rank = 0;
    bool is_sink = false;
};

std::optional<std::pair<std::size_t, TypedSymbol>> find_quotient(const PSPairSet& y,
                                                                 const std::vector<PSState>& existing,
                                                                 unsigned j);

struct PowersetResult {
    Automaton automaton;
    std::vector<std::string> state_notes; // one line per state: its pair set
};

/// The powerset construction. States are named S0, S1, ... in creation order
/// plus the final sink Sf; the result is validated before returning.
PowersetResult powerset(const Automaton& a);

/// No two transitions share source and symbol with different targets.
bool is_deterministic(const Automaton& a);

/// Unordered pairs of distinct non-blank symbols that differ only in their
/// rear interfaces. Empty result = unambiguous automaton.
std::vector<std::pair<TypedSymbol, TypedSymbol>> ambiguous_pairs(const Automaton& a);

/// Splits every member of an ambiguity class into the rear-general atom
/// followed by a restoring blank (through a fresh state), until no ambiguous
/// pairs remain. Language-preserving; unambiguous inputs come back unchanged.
Automaton disambiguate(const Automaton& a);

} // namespace grata
