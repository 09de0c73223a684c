// Finite automata over graph symbols.
//
// States are ranked; a transition reading a symbol of type (i,j) goes from a
// rank-i state to a rank-j state. Automata run on symbol strings in the usual
// way and on graphs via moves that split off one atom or blank at the front.
#pragma once

#include "grata/symbols.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace grata {

struct State {
    std::string name;
    unsigned rank = 0;
};

struct Transition {
    std::string from;
    TypedSymbol symbol;
    std::string to;
};

struct Automaton {
    std::string name;
    RankedAlphabet alphabet;
    std::vector<State> states;
    std::vector<Transition> transitions;
    std::string initial;
    std::vector<std::string> finals;

    const State* find_state(const std::string& name) const;
    std::optional<unsigned> state_rank(const std::string& name) const;
    bool is_final(const std::string& name) const;

    /// (rank of initial, common rank of finals); requires a valid automaton.
    std::pair<unsigned, unsigned> type() const;

    /// Indices of the transitions leaving `state`, in file order.
    std::vector<std::size_t> transitions_from(const std::string& state) const;

    /// Distinct non-blank symbols used by transitions, in first-use order.
    std::vector<TypedSymbol> atom_symbols() const;
};

/// All violations of the automaton invariants: unknown states/labels,
/// ill-typed transitions, initial among finals, empty or unevenly ranked
/// final set, duplicate state names.
std::vector<std::string> validate_automaton(const Automaton& a);

/// Throws std::runtime_error listing validate_automaton's findings, if any.
void require_valid(const Automaton& a);

/// Violations of the shape the analysis and the deterministic recognizer
/// expect: blank transitions only into final states and no transitions out of
/// final states (the shape the powerset construction produces).
std::vector<std::string> recognition_form_violations(const Automaton& a);

bool accepts_string(const Automaton& a, const SymbolString& w);

/// All accepted strings of length <= max_len, by breadth-first path
/// enumeration (cycles allowed up to the length bound).
std::set<SymbolString> enumerate_accepted(const Automaton& a, unsigned max_len);

/// Accepted strings with at most `max_atoms` non-blank symbols, where within
/// each maximal run of blank moves no (state, composed blank) pair repeats.
/// Together these cover every denoted graph with <= max_atoms edges.
std::vector<SymbolString> enumerate_condensed(const Automaton& a, unsigned max_atoms);

struct GraphConfiguration {
    std::string state;
    Graph graph;
};

struct TraceStep {
    std::size_t transition = 0;           // index into Automaton::transitions
    std::optional<std::string> edge;      // consumed edge, absent for blank moves
    std::vector<std::string> node_map;    // symbol node index k (1-based) -> node name
};
using MoveTrace = std::vector<TraceStep>;

struct MoveResult {
    bool applicable = false;
    std::string reason;                   // inapplicability reason code + detail
    GraphConfiguration next;              // meaningful iff applicable
    std::vector<std::string> node_map;
};

/// Applies one transition to a graph configuration. Atom transitions need the
/// edge to consume; blank transitions take no edge.
MoveResult graph_move(const GraphConfiguration& c, const Automaton& a, std::size_t transition,
                      const std::optional<std::string>& edge_name);

/// True iff taking the given blank transition from `c` ends in an accepting
/// configuration: the move leaves exactly the identity blank of the final
/// rank. Requires t to read a blank into a final state.
bool is_final_blank_accepting(const GraphConfiguration& c, const Automaton& a,
                              std::size_t transition);

enum class Verdict { Accept, Reject, ResourceLimit };

struct BacktrackResult {
    Verdict verdict = Verdict::Reject;
    MoveTrace trace;                      // filled on accept
    std::size_t visited = 0;              // configurations entered
};

/// Exhaustive depth-first search over graph moves; the correctness oracle.
/// Exponential in the worst case. `max_visits` bounds explored configurations;
/// exceeding it yields Verdict::ResourceLimit (distinct from a reject).
BacktrackResult recognize_backtracking(const Automaton& a, const Graph& g,
                                       std::size_t max_visits = 5'000'000);

/// Replays a trace from (initial, g) and checks that it ends accepting and
/// that the symbols it spells denote g.
bool verify_trace(const Automaton& a, const Graph& g, const MoveTrace& trace);

struct EquivalenceResult {
    bool equivalent = true;
    int failing_side = -1;                // 0: a accepts unmatched, 1: b does
    SymbolString counterexample;
};

/// Checks mutual inclusion of the accepted languages over strings of length
/// <= max_len, comparing modulo similarity with a leading identity blank.
/// Matches are searched among blank-condensed strings with as many atoms, so
/// a refutation is a real counterexample at this bound; a pass is evidence,
/// not proof (no complete decision procedure is known).
EquivalenceResult equivalent_bounded(const Automaton& a, const Automaton& b, unsigned max_len);

} // namespace grata
