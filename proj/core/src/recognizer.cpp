#include "grata/recognizer.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace grata {

WorkGraph::WorkGraph(const Graph& g)
    : g_(&g), edge_alive_(g.edge_count(), 1), node_alive_(g.node_count(), 1),
      deg_(g.degrees()), rear_flag_(g.node_count(), 0), front_flag_(g.node_count(), 0),
      front_(g.front()), alive_edges_(g.edge_count()), alive_nodes_(g.node_count()) {
    for (NodeId v : g.rear()) rear_flag_[v] = 1;
    for (NodeId v : front_) front_flag_[v] = 1;

    std::size_t total_slots = 0;
    edge_slot_base_.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        edge_slot_base_.push_back(static_cast<int32_t>(total_slots));
        total_slots += e.att.size();
    }
    slots_.resize(total_slots);
    for (const Edge& e : g.edges())
        if (!labels_.count(e.label))
            labels_.emplace(e.label, static_cast<int32_t>(labels_.size()));
    // Insert in reverse so that each list head is the lowest surviving edge
    // index and scans probe candidates in ascending order.
    for (EdgeId r = 0; r < g.edge_count(); ++r) {
        EdgeId e = static_cast<EdgeId>(g.edge_count() - 1 - r);
        const Edge& edge = g.edge(e);
        int32_t lab = labels_.at(edge.label);
        for (unsigned k = 0; k < edge.att.size(); ++k) {
            int32_t si = edge_slot_base_[e] + static_cast<int32_t>(k);
            Slot& s = slots_[si];
            s.edge = e;
            s.key = list_key(edge.att[k], lab, k);
            List& list = lists_[s.key];
            s.next = list.head;
            if (list.head >= 0) slots_[list.head].prev = si;
            list.head = si;
            ++list.count;
        }
    }
}

int32_t WorkGraph::label_id(const std::string& label) const {
    auto it = labels_.find(label);
    return it == labels_.end() ? -1 : it->second;
}

uint64_t WorkGraph::list_key(NodeId v, int32_t label, unsigned pos) const {
    return (static_cast<uint64_t>(v) << 24) | (static_cast<uint64_t>(label) << 8) |
           static_cast<uint64_t>(pos);
}

void WorkGraph::unlink(int32_t si) {
    Slot& s = slots_[si];
    List& list = lists_[s.key];
    if (s.prev >= 0) slots_[s.prev].next = s.next;
    else list.head = s.next;
    if (s.next >= 0) slots_[s.next].prev = s.prev;
    s.prev = s.next = -1;
    --list.count;
}

std::vector<EdgeId> WorkGraph::incidence_list(NodeId v, const std::string& label,
                                              unsigned pos) const {
    std::vector<EdgeId> out;
    int32_t lab = label_id(label);
    if (lab < 0) return out;
    auto it = lists_.find(list_key(v, lab, pos));
    if (it == lists_.end()) return out;
    for (int32_t si = it->second.head; si >= 0; si = slots_[si].next) out.push_back(slots_[si].edge);
    return out;
}

std::size_t WorkGraph::incidence_count(NodeId v, const std::string& label, unsigned pos) const {
    int32_t lab = label_id(label);
    if (lab < 0) return 0;
    auto it = lists_.find(list_key(v, lab, pos));
    return it == lists_.end() ? 0 : it->second.count;
}

namespace {

// Full applicability check of one candidate edge; mirrors the graph-move
// semantics (the agreement with the backtracking oracle is tested).
bool full_check(const WorkGraph& w, const AtomSymbol& sym, const Edge& e,
                std::vector<NodeId>& map) {
    const auto& front = w.front();
    map.assign(sym.node_count, 0);
    for (unsigned k = 0; k < sym.rank; ++k) map[k] = e.att[k];
    for (std::size_t i = 0; i < sym.phi.size(); ++i) {
        unsigned x = sym.phi[i];
        if (x <= sym.rank) {
            if (e.att[x - 1] != front[i]) return false;
        } else {
            map[x - 1] = front[i];
        }
    }
    for (unsigned i = 0; i < sym.node_count; ++i)
        for (unsigned j = i + 1; j < sym.node_count; ++j)
            if (map[i] == map[j]) return false;
    std::vector<bool> kept(sym.node_count, false);
    for (unsigned x : sym.rho) kept[x - 1] = true;
    for (unsigned x = 1; x <= sym.node_count; ++x) {
        if (kept[x - 1]) continue;
        NodeId u = map[x - 1];
        unsigned expected = x <= sym.rank ? 1u : 0u;
        if (w.degree(u) != expected || w.in_rear(u)) return false;
    }
    return true;
}

} // namespace

std::optional<WorkGraph::Move> WorkGraph::try_symbol(const AtomSymbol& sym,
                                                     std::size_t& probes) const {
    if (front_.size() != sym.phi.size()) return std::nullopt;
    int32_t lab = label_id(sym.label);
    if (lab < 0) return std::nullopt;

    // Anchor on the front position with the fewest candidate edges.
    int32_t best_head = -1;
    std::size_t best_count = SIZE_MAX;
    bool anchored = false;
    for (std::size_t i = 0; i < sym.phi.size(); ++i) {
        unsigned x = sym.phi[i];
        if (x > sym.rank) continue;
        anchored = true;
        auto it = lists_.find(list_key(front_[i], lab, x - 1));
        std::size_t count = it == lists_.end() ? 0 : it->second.count;
        if (count < best_count) {
            best_count = count;
            best_head = it == lists_.end() ? -1 : it->second.head;
        }
    }
    Move move;
    if (anchored) {
        if (best_head < 0) return std::nullopt;
        for (int32_t si = best_head; si >= 0; si = slots_[si].next) {
            ++probes;
            EdgeId e = slots_[si].edge;
            if (full_check(*this, sym, g_->edge(e), move.map)) {
                move.edge = e;
                return move;
            }
        }
        return std::nullopt;
    }
    // No attached node is a front node: scan all alive edges of this label.
    for (EdgeId e = 0; e < g_->edge_count(); ++e) {
        if (!edge_alive_[e] || g_->edge(e).label != sym.label) continue;
        ++probes;
        if (full_check(*this, sym, g_->edge(e), move.map)) {
            move.edge = e;
            return move;
        }
    }
    return std::nullopt;
}

void WorkGraph::apply(const AtomSymbol& sym, const Move& move) {
    const Edge& e = g_->edge(move.edge);
    edge_alive_[move.edge] = 0;
    --alive_edges_;
    for (unsigned k = 0; k < e.att.size(); ++k) {
        unlink(edge_slot_base_[move.edge] + static_cast<int32_t>(k));
        --deg_[e.att[k]];
    }
    std::vector<bool> kept(sym.node_count, false);
    for (unsigned x : sym.rho) kept[x - 1] = true;
    for (unsigned x = 1; x <= sym.node_count; ++x) {
        if (kept[x - 1]) continue;
        node_alive_[move.map[x - 1]] = 0;
        --alive_nodes_;
    }
    for (NodeId v : front_) front_flag_[v] = 0;
    front_.clear();
    front_.reserve(sym.rho.size());
    for (unsigned x : sym.rho) {
        front_.push_back(move.map[x - 1]);
        front_flag_[move.map[x - 1]] = 1;
    }
}

bool WorkGraph::final_blank_accepts(const BlankSymbol& sym) const {
    if (alive_edges_ != 0) return false;
    if (front_.size() != sym.node_count) return false;
    if (alive_nodes_ != front_.size()) return false;
    if (g_->rear().size() != sym.rho.size()) return false;
    for (std::size_t j = 0; j < sym.rho.size(); ++j)
        if (g_->rear()[j] != front_[sym.rho[j] - 1]) return false;
    return true;
}

RecognitionResult recognize_deterministic(const Automaton& a,
                                          const std::map<std::string, StateOrder>& orders,
                                          const Graph& g) {
    auto start = std::chrono::steady_clock::now();
    RecognitionResult result;
    WorkGraph wg(g);
    std::string state = a.initial;

    auto finish = [&](Verdict v, const std::string& reason) {
        result.verdict = v;
        result.reason = reason;
        result.at_step = result.stats.moves;
        result.stats.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };

    for (;;) {
        auto it = orders.find(state);
        if (it == orders.end())
            return finish(Verdict::Reject, "state '" + state + "' has no trial order");
        const StateOrder& order = it->second;
        if (wg.alive_edges() == 0) {
            for (std::size_t ti : order.blanks) {
                const Transition& t = a.transitions[ti];
                if (!wg.final_blank_accepts(t.symbol.blank())) continue;
                TraceStep step{ti, std::nullopt, {}};
                for (NodeId v : wg.blank_map()) step.node_map.push_back(g.node_name(v));
                result.trace.push_back(std::move(step));
                ++result.stats.moves;
                return finish(Verdict::Accept, "");
            }
            return finish(Verdict::Reject, "edge-free remainder is not an identity blank in state '" +
                                               state + "'");
        }
        bool moved = false;
        for (std::size_t ti : order.atoms) {
            const Transition& t = a.transitions[ti];
            auto move = wg.try_symbol(t.symbol.atom(), result.stats.probes);
            if (!move) continue;
            TraceStep step{ti, g.edge(move->edge).name, {}};
            for (NodeId v : move->map) step.node_map.push_back(g.node_name(v));
            result.trace.push_back(std::move(step));
            wg.apply(t.symbol.atom(), *move);
            ++result.stats.moves;
            state = t.to;
            moved = true;
            break;
        }
        if (!moved)
            return finish(Verdict::Reject,
                          "no transition applies in state '" + state + "' with " +
                              std::to_string(wg.alive_edges()) + " edges left");
    }
}

RecognitionResult recognize_checked(const Automaton& a, const Graph& g, bool unsafe) {
    AnalysisReport report = analyze(a);
    if (!report.ok() && !unsafe) {
        std::string msg = "automaton does not qualify for backtracking-free recognition";
        if (!report.valid()) msg += " (invalid)";
        else if (!report.recognition_form()) msg += " (not in recognition form)";
        else if (!report.deterministic) msg += " (nondeterministic)";
        else if (!report.ts.holds) msg += " (transition selection fails)";
        else if (!report.fec.passes) msg += " (free edge choice test fails)";
        throw std::runtime_error(msg);
    }
    std::map<std::string, StateOrder> orders;
    if (report.ts.holds) {
        orders = report.ts.orders;
    } else {
        for (const State& s : a.states) {
            StateOrder o;
            for (std::size_t t : a.transitions_from(s.name))
                (a.transitions[t].symbol.is_blank() ? o.blanks : o.atoms).push_back(t);
            orders[s.name] = std::move(o);
        }
    }
    return recognize_deterministic(a, orders, g);
}

} // namespace grata
