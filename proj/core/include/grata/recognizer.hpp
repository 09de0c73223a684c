// Backtracking-free recognition: an indexed mutable view of the input graph
// plus the greedy loop that commits the first applicable transition in trial
// order. Sound without backtracking when the automaton is deterministic and
// has the transition-selection and free-edge-choice properties.
#pragma once

#include "grata/analysis.hpp"
#include "grata/automaton.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace grata {

/// Deletion overlay over a graph with per-(node, label, position) incidence
/// lists, degree counters and the current front. Indices are linked lists so
/// consuming an edge unlinks it everywhere in O(rank).
class WorkGraph {
public:
    explicit WorkGraph(const Graph& g);

    const Graph& base() const { return *g_; }
    std::size_t alive_edges() const { return alive_edges_; }
    std::size_t alive_nodes() const { return alive_nodes_; }
    const std::vector<NodeId>& front() const { return front_; }
    unsigned degree(NodeId v) const { return deg_[v]; }
    bool in_rear(NodeId v) const { return rear_flag_[v] != 0; }
    bool edge_alive(EdgeId e) const { return edge_alive_[e] != 0; }

    /// Alive entries of the (node, label, attachment position) incidence list;
    /// `pos` is 0-based. Used by tests to cross-check the index.
    std::vector<EdgeId> incidence_list(NodeId v, const std::string& label, unsigned pos) const;
    std::size_t incidence_count(NodeId v, const std::string& label, unsigned pos) const;

    struct Move {
        EdgeId edge = 0;
        std::vector<NodeId> map; // symbol node index k-1 -> graph node
    };

    /// Finds the first consumable edge for a non-blank transition symbol, or
    /// nothing. Probes the shortest applicable incidence list.
    std::optional<Move> try_symbol(const AtomSymbol& sym, std::size_t& probes) const;

    /// Commits a move: deletes the edge, drops the symbol-only nodes, rewrites
    /// the front.
    void apply(const AtomSymbol& sym, const Move& move);

    /// Final blank test: does reading this blank leave exactly the identity
    /// blank (edge-free, all alive nodes in the front, rear = permuted front)?
    bool final_blank_accepts(const BlankSymbol& sym) const;

    /// Commits the final blank move (front := front ∘ rho, drops the rest).
    std::vector<NodeId> blank_map() const { return front_; }

private:
    int32_t label_id(const std::string& label) const;
    uint64_t list_key(NodeId v, int32_t label, unsigned pos) const;

    const Graph* g_;
    std::vector<char> edge_alive_;
    std::vector<char> node_alive_;
    std::vector<unsigned> deg_;
    std::vector<char> rear_flag_;
    std::vector<char> front_flag_;
    std::vector<NodeId> front_;
    std::size_t alive_edges_ = 0;
    std::size_t alive_nodes_ = 0;

    std::unordered_map<std::string, int32_t> labels_;

    struct List {
        int32_t head = -1;
        std::size_t count = 0;
    };
    std::unordered_map<uint64_t, List> lists_;
    // One slot per (edge, position): linked-list node inside its incidence list.
    struct Slot {
        int32_t prev = -1, next = -1;
        uint64_t key = 0;
        EdgeId edge = 0;
    };
    std::vector<Slot> slots_;
    std::vector<int32_t> edge_slot_base_;

    void unlink(int32_t slot);
};

struct RecognitionStats {
    std::size_t moves = 0;
    std::size_t probes = 0;
    double elapsed_seconds = 0;
};

struct RecognitionResult {
    Verdict verdict = Verdict::Reject;
    std::string reason;       // on reject: what failed and at which step
    std::size_t at_step = 0;  // move count when recognition stopped
    MoveTrace trace;          // full trace on accept
    RecognitionStats stats;
};

/// Greedy deterministic recognition: with the graph edge-free, try the blank
/// transitions of the current state; otherwise commit the first applicable
/// non-blank transition in `orders` trial order. Never backtracks. `orders`
/// comes from ts_check; callers are expected to have run analyze() (see
/// recognize_checked) unless they accept advisory verdicts.
RecognitionResult recognize_deterministic(const Automaton& a,
                                          const std::map<std::string, StateOrder>& orders,
                                          const Graph& g);

/// Runs analyze() first and refuses (throws) when the automaton is not
/// deterministic+TS+FEC-pass; `unsafe` skips the refusal (verdict advisory,
/// TS orders still used when available, file order otherwise).
RecognitionResult recognize_checked(const Automaton& a, const Graph& g, bool unsafe = false);

} // namespace grata
