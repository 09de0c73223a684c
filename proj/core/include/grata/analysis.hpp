// Dead-end analysis for determinized automata: which edge a transition reads
// relative to the current front (port maps), which reads can still happen
// after a given transition (follow sets), and the two properties that make
// backtracking-free recognition sound (transition selection, free edge
// choice).
#pragma once

#include "grata/automaton.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace grata {

/// Partial map between attachment positions of an edge and front interface
/// positions, stored as a sorted list of 1-based (from, to) pairs.
using PortMap = std::vector<std::pair<unsigned, unsigned>>;

/// A (label, port map) pair: an edge read with this label, attached to the
/// tracked front positions as the port map says.
using FollowItem = std::pair<std::string, PortMap>;
using FollowSet = std::set<FollowItem>;

std::string to_string(const PortMap& m);
std::string to_string(const FollowItem& item);

/// The read performed by a non-blank transition itself: its label plus the
/// map from attachment positions to source-front positions.
FollowItem next_of(const Automaton& a, std::size_t transition);

/// Every (label, port map) that some move sequence starting with `t0` can
/// read, with ports tracked relative to t0's source front. Requires the
/// automaton in recognition form (blanks only into finals).
FollowSet follow_of(const Automaton& a, std::size_t t0);

struct StateOrder {
    std::vector<std::size_t> atoms;  // non-blank transitions, trial order
    std::vector<std::size_t> blanks; // blank transitions, file order
};

struct TsResult {
    bool holds = false;
    std::map<std::string, StateOrder> orders; // per state, meaningful when holds
    std::string cycle_state;                  // on failure
    std::vector<std::size_t> cycle;           // transitions forming a precedence cycle
};

/// Transition selection: per state, `d < d'` when d' reads something d's
/// continuations can also read; holds iff that relation is acyclic, in which
/// case a total trial order extending it is returned (topological sort,
/// file-order tie-break).
TsResult ts_check(const Automaton& a);

/// Could the edge read by `t` alternatively be read by a later occurrence of
/// `t` in a move sequence that starts with `t`? (If so, skipping one of
/// several candidate edges defers it rather than losing it.)
bool deferrable(const Automaton& a, std::size_t transition);

struct FecResult {
    bool passes = false;
    std::vector<std::size_t> offending; // deferrable transitions with [rho] not within [phi]
};

/// Sufficient free-edge-choice test: every deferrable transition must keep
/// only nodes it also matched against the front. A pass guarantees the
/// property; a failure is inconclusive.
FecResult fec_test(const Automaton& a);

struct AnalysisReport {
    std::vector<std::string> violations;      // validate_automaton
    std::vector<std::string> form_violations; // recognition_form_violations
    bool deterministic = false;
    TsResult ts;
    std::vector<std::size_t> deferrables;
    FecResult fec;

    bool valid() const { return violations.empty(); }
    bool recognition_form() const { return form_violations.empty(); }
    bool ok() const {
        return valid() && recognition_form() && deterministic && ts.holds && fec.passes;
    }
};

/// Runs the full analysis pipeline; follow-based parts are skipped when the
/// automaton is invalid or not in recognition form.
AnalysisReport analyze(const Automaton& a);

/// Human- and machine-readable `key: value` report.
std::string format_report(const Automaton& a, const AnalysisReport& r);

/// d1, d2, ... in file order, plus the transition itself.
std::string describe_transition(const Automaton& a, std::size_t t);

} // namespace grata
