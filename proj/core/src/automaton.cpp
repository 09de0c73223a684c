#include "grata/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace grata {

const State* Automaton::find_state(const std::string& name) const {
    for (const State& s : states)
        if (s.name == name) return &s;
    return nullptr;
}

std::optional<unsigned> Automaton::state_rank(const std::string& name) const {
    const State* s = find_state(name);
    if (!s) return std::nullopt;
    return s->rank;
}

bool Automaton::is_final(const std::string& name) const {
    return std::find(finals.begin(), finals.end(), name) != finals.end();
}

std::pair<unsigned, unsigned> Automaton::type() const {
    auto m = state_rank(initial);
    if (!m || finals.empty()) throw std::runtime_error("automaton type undefined");
    auto n = state_rank(finals.front());
    if (!n) throw std::runtime_error("automaton type undefined");
    return {*m, *n};
}

std::vector<std::size_t> Automaton::transitions_from(const std::string& state) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].from == state) out.push_back(i);
    return out;
}

std::vector<TypedSymbol> Automaton::atom_symbols() const {
    std::vector<TypedSymbol> out;
    for (const Transition& t : transitions) {
        if (t.symbol.is_blank()) continue;
        if (std::find(out.begin(), out.end(), t.symbol) == out.end()) out.push_back(t.symbol);
    }
    return out;
}

std::vector<std::string> validate_automaton(const Automaton& a) {
    std::vector<std::string> out;
    std::set<std::string> names;
    for (const State& s : a.states) {
        if (!is_valid_name(s.name)) out.push_back("invalid state name '" + s.name + "'");
        if (!names.insert(s.name).second) out.push_back("duplicate state name '" + s.name + "'");
    }
    if (!names.count(a.initial)) out.push_back("initial state '" + a.initial + "' is not declared");
    if (a.finals.empty()) out.push_back("the set of final states is empty");
    for (const auto& f : a.finals) {
        if (!names.count(f)) out.push_back("final state '" + f + "' is not declared");
        if (f == a.initial) out.push_back("the initial state '" + f + "' must not be final");
    }
    std::optional<unsigned> final_rank;
    for (const auto& f : a.finals) {
        auto r = a.state_rank(f);
        if (!r) continue;
        if (!final_rank) final_rank = *r;
        else if (*final_rank != *r)
            out.push_back("final states do not share one rank (" + std::to_string(*final_rank) +
                          " vs " + std::to_string(*r) + ")");
    }
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const Transition& t = a.transitions[i];
        std::string where = "transition #" + std::to_string(i + 1);
        auto rs = a.state_rank(t.from);
        auto rt = a.state_rank(t.to);
        if (!rs) out.push_back(where + ": unknown source state '" + t.from + "'");
        if (!rt) out.push_back(where + ": unknown target state '" + t.to + "'");
        auto [i_rank, j_rank] = t.symbol.type();
        if (rs && *rs != i_rank)
            out.push_back(where + ": symbol front rank " + std::to_string(i_rank) +
                          " does not match rank " + std::to_string(*rs) + " of '" + t.from + "'");
        if (rt && *rt != j_rank)
            out.push_back(where + ": symbol rear rank " + std::to_string(j_rank) +
                          " does not match rank " + std::to_string(*rt) + " of '" + t.to + "'");
        if (t.symbol.is_atom()) {
            const AtomSymbol& sym = t.symbol.atom();
            auto r = a.alphabet.rank_of(sym.label);
            if (!r) out.push_back(where + ": unknown label '" + sym.label + "'");
            else if (*r != sym.rank)
                out.push_back(where + ": label '" + sym.label + "' has rank " + std::to_string(*r) +
                              ", symbol uses " + std::to_string(sym.rank));
        }
    }
    return out;
}

void require_valid(const Automaton& a) {
    auto violations = validate_automaton(a);
    if (violations.empty()) return;
    std::string msg = "invalid automaton";
    if (!a.name.empty()) msg += " '" + a.name + "'";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
}

std::vector<std::string> recognition_form_violations(const Automaton& a) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const Transition& t = a.transitions[i];
        if (t.symbol.is_blank() && !a.is_final(t.to))
            out.push_back("transition #" + std::to_string(i + 1) +
                          " reads a blank into non-final state '" + t.to + "'");
        if (a.is_final(t.from))
            out.push_back("transition #" + std::to_string(i + 1) + " leaves final state '" +
                          t.from + "'");
    }
    return out;
}

bool accepts_string(const Automaton& a, const SymbolString& w) {
    std::set<std::pair<std::string, std::size_t>> seen;
    std::vector<std::pair<std::string, std::size_t>> stack{{a.initial, 0}};
    while (!stack.empty()) {
        auto [q, pos] = stack.back();
        stack.pop_back();
        if (!seen.insert({q, pos}).second) continue;
        if (pos == w.size()) {
            if (a.is_final(q)) return true;
            continue;
        }
        for (const Transition& t : a.transitions)
            if (t.from == q && t.symbol == w[pos]) stack.push_back({t.to, pos + 1});
    }
    return false;
}

std::set<SymbolString> enumerate_accepted(const Automaton& a, unsigned max_len) {
    std::set<SymbolString> out;
    std::vector<std::pair<std::string, SymbolString>> layer{{a.initial, {}}};
    for (unsigned len = 0; len < max_len && !layer.empty(); ++len) {
        std::vector<std::pair<std::string, SymbolString>> next;
        for (const auto& [q, w] : layer) {
            for (const Transition& t : a.transitions) {
                if (t.from != q) continue;
                SymbolString w2 = w;
                w2.push_back(t.symbol);
                if (a.is_final(t.to)) out.insert(w2);
                next.emplace_back(t.to, std::move(w2));
            }
        }
        layer = std::move(next);
    }
    return out;
}

std::vector<SymbolString> enumerate_condensed(const Automaton& a, unsigned max_atoms) {
    std::vector<SymbolString> out;
    SymbolString w;
    constexpr std::size_t kMaxStrings = 500'000;

    using RunMark = std::pair<std::string, TypedSymbol>;
    auto dfs = [&](auto&& self, const std::string& q, const TypedSymbol& composed,
                   std::set<RunMark>& run, unsigned atoms) -> void {
        if (a.is_final(q) && !w.empty()) out.push_back(w);
        if (out.size() > kMaxStrings)
            throw std::runtime_error("condensed enumeration exceeded the string budget");
        for (const Transition& t : a.transitions) {
            if (t.from != q) continue;
            if (t.symbol.is_blank()) {
                TypedSymbol next = compose_symbols(composed, t.symbol);
                RunMark mark{t.to, next};
                if (run.count(mark)) continue;
                run.insert(mark);
                w.push_back(t.symbol);
                self(self, t.to, next, run, atoms);
                w.pop_back();
                run.erase(mark);
            } else {
                if (atoms == max_atoms) continue;
                auto rank = a.state_rank(t.to);
                std::set<RunMark> fresh{{t.to, identity_blank(rank ? *rank : 0)}};
                w.push_back(t.symbol);
                self(self, t.to, identity_blank(rank ? *rank : 0), fresh, atoms + 1);
                w.pop_back();
            }
        }
    };
    auto rank0 = a.state_rank(a.initial);
    std::set<RunMark> run{{a.initial, identity_blank(rank0 ? *rank0 : 0)}};
    dfs(dfs, a.initial, identity_blank(rank0 ? *rank0 : 0), run, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct MoveCheck {
    bool ok = false;
    std::string reason;
    std::vector<NodeId> map;       // symbol node index k-1 -> graph node
    std::vector<NodeId> dropped;
    std::vector<NodeId> new_front;
};

// Core applicability test for an atom move, shared by graph_move and the
// backtracking oracle. `degree` must count currently alive edges including
// the candidate edge itself.
template <class DegFn, class RearFn>
MoveCheck check_atom_move(const AtomSymbol& sym, const std::vector<NodeId>& front, const Edge& e,
                          DegFn degree, RearFn in_rear) {
    MoveCheck r;
    if (e.label != sym.label) { r.reason = "label-mismatch"; return r; }
    if (e.att.size() != sym.rank) { r.reason = "arity-mismatch"; return r; }
    if (front.size() != sym.phi.size()) { r.reason = "front-mismatch: front length"; return r; }
    unsigned n = sym.node_count;
    r.map.assign(n, 0);
    std::vector<bool> assigned(n, false);
    for (unsigned k = 0; k < sym.rank; ++k) {
        r.map[k] = e.att[k];
        assigned[k] = true;
    }
    for (std::size_t i = 0; i < sym.phi.size(); ++i) {
        unsigned x = sym.phi[i];
        if (x <= sym.rank) {
            if (e.att[x - 1] != front[i]) { r.reason = "front-mismatch"; return r; }
        } else {
            r.map[x - 1] = front[i];
            assigned[x - 1] = true;
        }
    }
    for (unsigned k = 0; k < n; ++k)
        if (!assigned[k]) { r.reason = "front-mismatch: unassigned symbol node"; return r; }
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            if (r.map[i] == r.map[j]) { r.reason = "not-injective"; return r; }
    std::vector<bool> kept(n, false);
    for (unsigned x : sym.rho) kept[x - 1] = true;
    for (unsigned x = 1; x <= n; ++x) {
        if (kept[x - 1]) continue;
        NodeId u = r.map[x - 1];
        unsigned expected = x <= sym.rank ? 1u : 0u;
        if (degree(u) != expected) { r.reason = "dangling-node"; return r; }
        if (in_rear(u)) { r.reason = "rear-violation"; return r; }
        r.dropped.push_back(u);
    }
    r.new_front.reserve(sym.rho.size());
    for (unsigned x : sym.rho) r.new_front.push_back(r.map[x - 1]);
    r.ok = true;
    return r;
}

template <class DegFn, class RearFn>
MoveCheck check_blank_move(const BlankSymbol& sym, const std::vector<NodeId>& front, DegFn degree,
                           RearFn in_rear) {
    MoveCheck r;
    if (front.size() != sym.node_count) { r.reason = "front-mismatch: front length"; return r; }
    std::vector<bool> kept(sym.node_count, false);
    for (unsigned x : sym.rho) kept[x - 1] = true;
    for (unsigned x = 1; x <= sym.node_count; ++x) {
        if (kept[x - 1]) continue;
        NodeId u = front[x - 1];
        if (degree(u) != 0) { r.reason = "dangling-node"; return r; }
        if (in_rear(u)) { r.reason = "rear-violation"; return r; }
        r.dropped.push_back(u);
    }
    r.map = front;
    r.new_front.reserve(sym.rho.size());
    for (unsigned x : sym.rho) r.new_front.push_back(front[x - 1]);
    r.ok = true;
    return r;
}

} // namespace

MoveResult graph_move(const GraphConfiguration& c, const Automaton& a, std::size_t transition,
                      const std::optional<std::string>& edge_name) {
    if (transition >= a.transitions.size()) throw std::runtime_error("transition index out of range");
    const Transition& t = a.transitions[transition];
    if (t.from != c.state)
        throw std::runtime_error("transition leaves '" + t.from + "' but configuration is in '" +
                                 c.state + "'");
    const Graph& g = c.graph;
    auto deg = g.degrees();
    std::set<NodeId> rear_set(g.rear().begin(), g.rear().end());
    auto degree = [&](NodeId u) { return deg[u]; };
    auto in_rear = [&](NodeId u) { return rear_set.count(u) != 0; };

    MoveResult out;
    MoveCheck check;
    std::optional<EdgeId> consumed;
    if (t.symbol.is_atom()) {
        if (!edge_name) throw std::runtime_error("atom move needs an edge");
        consumed = g.find_edge(*edge_name);
        if (!consumed) throw std::runtime_error("no edge named '" + *edge_name + "'");
        check = check_atom_move(t.symbol.atom(), g.front(), g.edge(*consumed), degree, in_rear);
    } else {
        if (edge_name) throw std::runtime_error("blank move takes no edge");
        check = check_blank_move(t.symbol.blank(), g.front(), degree, in_rear);
    }
    if (!check.ok) {
        out.reason = check.reason;
        return out;
    }

    Graph next;
    std::set<NodeId> dropped(check.dropped.begin(), check.dropped.end());
    std::vector<NodeId> remap(g.node_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!dropped.count(v)) remap[v] = next.add_node(g.node_name(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (consumed && *consumed == e) continue;
        std::vector<NodeId> att;
        att.reserve(g.edge(e).att.size());
        for (NodeId v : g.edge(e).att) att.push_back(remap[v]);
        next.add_edge_named(g.edge(e).name, g.edge(e).label, std::move(att));
    }
    std::vector<NodeId> front, rear;
    for (NodeId v : check.new_front) front.push_back(remap[v]);
    for (NodeId v : g.rear()) rear.push_back(remap[v]);
    next.set_front(std::move(front));
    next.set_rear(std::move(rear));

    out.applicable = true;
    out.next = GraphConfiguration{t.to, std::move(next)};
    for (NodeId v : check.map) out.node_map.push_back(g.node_name(v));
    return out;
}

bool is_final_blank_accepting(const GraphConfiguration& c, const Automaton& a,
                              std::size_t transition) {
    const Transition& t = a.transitions[transition];
    if (!t.symbol.is_blank() || !a.is_final(t.to))
        throw std::runtime_error("is_final_blank_accepting needs a blank transition into a final state");
    const BlankSymbol& sym = t.symbol.blank();
    const Graph& g = c.graph;
    if (g.edge_count() != 0) return false;
    if (g.front().size() != sym.node_count) return false;
    if (g.node_count() != g.front().size()) return false;
    if (g.rear().size() != sym.rho.size()) return false;
    for (std::size_t j = 0; j < sym.rho.size(); ++j)
        if (g.rear()[j] != g.front()[sym.rho[j] - 1]) return false;
    return true;
}

namespace {

// Mutable view of a graph used by the oracle's depth-first search.
struct Overlay {
    const Graph& g;
    std::vector<char> edge_alive;
    std::vector<char> node_alive;
    std::vector<unsigned> deg;
    std::vector<char> rear_flag;
    std::vector<NodeId> front;
    std::size_t alive_edges;
    std::size_t alive_nodes;

    explicit Overlay(const Graph& graph)
        : g(graph), edge_alive(graph.edge_count(), 1), node_alive(graph.node_count(), 1),
          deg(graph.degrees()), rear_flag(graph.node_count(), 0), front(graph.front()),
          alive_edges(graph.edge_count()), alive_nodes(graph.node_count()) {
        for (NodeId v : graph.rear()) rear_flag[v] = 1;
    }

    struct Undo {
        std::optional<EdgeId> edge;
        std::vector<NodeId> dropped;
        std::vector<NodeId> old_front;
    };

    Undo apply(const MoveCheck& check, std::optional<EdgeId> edge) {
        Undo u{edge, check.dropped, front};
        if (edge) {
            edge_alive[*edge] = 0;
            --alive_edges;
            for (NodeId v : g.edge(*edge).att) --deg[v];
        }
        for (NodeId v : check.dropped) {
            node_alive[v] = 0;
            --alive_nodes;
        }
        front = check.new_front;
        return u;
    }

    void undo(const Undo& u) {
        if (u.edge) {
            edge_alive[*u.edge] = 1;
            ++alive_edges;
            for (NodeId v : g.edge(*u.edge).att) ++deg[v];
        }
        for (NodeId v : u.dropped) {
            node_alive[v] = 1;
            ++alive_nodes;
        }
        front = u.old_front;
    }
};

} // namespace

BacktrackResult recognize_backtracking(const Automaton& a, const Graph& g,
                                       std::size_t max_visits) {
    require_valid(a);
    BacktrackResult result;
    Overlay ov(g);
    MoveTrace path;
    bool limit = false;

    // Guards against unbounded chains of blank moves: within one blank
    // stretch the same (state, front, node count) must not recur.
    using BlankSig = std::tuple<std::string, std::vector<NodeId>, std::size_t>;

    auto accepting = [&](const std::string& q) {
        const State* s = a.find_state(q);
        if (!a.is_final(q) || ov.alive_edges != 0) return false;
        if (ov.front.size() != s->rank) return false;
        if (ov.alive_nodes != ov.front.size()) return false;
        if (g.rear().size() != ov.front.size()) return false;
        for (std::size_t i = 0; i < ov.front.size(); ++i)
            if (g.rear()[i] != ov.front[i]) return false;
        return true;
    };

    auto dfs = [&](auto&& self, const std::string& q, std::set<BlankSig>& blank_seen) -> bool {
        if (++result.visited > max_visits) {
            limit = true;
            return false;
        }
        if (accepting(q)) return true;
        for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
            const Transition& t = a.transitions[ti];
            if (t.from != q) continue;
            if (t.symbol.is_atom()) {
                const AtomSymbol& sym = t.symbol.atom();
                for (EdgeId e = 0; e < g.edge_count(); ++e) {
                    if (!ov.edge_alive[e]) continue;
                    auto check = check_atom_move(
                        sym, ov.front, g.edge(e), [&](NodeId u) { return ov.deg[u]; },
                        [&](NodeId u) { return ov.rear_flag[u] != 0; });
                    if (!check.ok) continue;
                    auto undo = ov.apply(check, e);
                    TraceStep step{ti, g.edge(e).name, {}};
                    for (NodeId v : check.map) step.node_map.push_back(g.node_name(v));
                    path.push_back(std::move(step));
                    std::set<BlankSig> fresh;
                    if (self(self, t.to, fresh)) return true;
                    path.pop_back();
                    ov.undo(undo);
                    if (limit) return false;
                }
            } else {
                auto check = check_blank_move(
                    t.symbol.blank(), ov.front, [&](NodeId u) { return ov.deg[u]; },
                    [&](NodeId u) { return ov.rear_flag[u] != 0; });
                if (!check.ok) continue;
                BlankSig sig{t.to, check.new_front, ov.alive_nodes - check.dropped.size()};
                if (blank_seen.count(sig)) continue;
                blank_seen.insert(sig);
                auto undo = ov.apply(check, std::nullopt);
                TraceStep step{ti, std::nullopt, {}};
                for (NodeId v : check.map) step.node_map.push_back(g.node_name(v));
                path.push_back(std::move(step));
                if (self(self, t.to, blank_seen)) return true;
                path.pop_back();
                ov.undo(undo);
                blank_seen.erase(sig);
                if (limit) return false;
            }
        }
        return false;
    };

    std::set<BlankSig> seed{{a.initial, ov.front, ov.alive_nodes}};
    bool ok = dfs(dfs, a.initial, seed);
    if (limit) {
        result.verdict = Verdict::ResourceLimit;
        return result;
    }
    result.verdict = ok ? Verdict::Accept : Verdict::Reject;
    if (ok) result.trace = path;
    return result;
}

bool verify_trace(const Automaton& a, const Graph& g, const MoveTrace& trace) {
    if (trace.empty()) return false;
    GraphConfiguration c{a.initial, g};
    SymbolString spelled;
    for (const TraceStep& step : trace) {
        if (step.transition >= a.transitions.size()) return false;
        const Transition& t = a.transitions[step.transition];
        if (t.from != c.state) return false;
        MoveResult r = graph_move(c, a, step.transition, step.edge);
        if (!r.applicable) return false;
        spelled.push_back(t.symbol);
        c = std::move(r.next);
    }
    const State* s = a.find_state(c.state);
    if (!s || !a.is_final(c.state)) return false;
    const Graph& rest = c.graph;
    if (rest.edge_count() != 0 || rest.front().size() != s->rank) return false;
    if (rest.node_count() != rest.front().size()) return false;
    if (rest.rear() != rest.front()) return false;
    if (!is_typed(spelled)) return false;
    return isomorphic(interpret_string(spelled, a.alphabet), g);
}

namespace {

using GraphKey = std::tuple<std::size_t, std::size_t, unsigned, std::string, std::vector<unsigned>>;

GraphKey graph_key(const Graph& g) {
    std::multiset<std::string> labels;
    for (const Edge& e : g.edges()) labels.insert(e.label);
    std::string lab;
    for (const auto& l : labels) lab += l + ";";
    auto deg = g.degrees();
    std::sort(deg.begin(), deg.end());
    return {g.node_count(), g.edge_count(), g.type().second, lab, deg};
}

} // namespace

EquivalenceResult equivalent_bounded(const Automaton& a, const Automaton& b, unsigned max_len) {
    require_valid(a);
    require_valid(b);
    if (a.type() != b.type())
        throw std::runtime_error("equivalent_bounded: automata types differ");
    unsigned m = a.type().first;
    TypedSymbol lead = identity_blank(m);

    auto one_inclusion = [&](const Automaton& x, const Automaton& y, int side,
                             EquivalenceResult& res) {
        auto claims = enumerate_accepted(x, max_len);
        auto matches = enumerate_condensed(y, max_len);
        std::map<GraphKey, std::vector<Graph>> buckets;
        for (const auto& w : matches) {
            SymbolString s{lead};
            s.insert(s.end(), w.begin(), w.end());
            Graph gw = interpret_string(s, y.alphabet);
            buckets[graph_key(gw)].push_back(std::move(gw));
        }
        for (const auto& w : claims) {
            SymbolString s{lead};
            s.insert(s.end(), w.begin(), w.end());
            Graph gw = interpret_string(s, x.alphabet);
            bool found = false;
            auto it = buckets.find(graph_key(gw));
            if (it != buckets.end())
                for (const Graph& cand : it->second)
                    if (isomorphic(gw, cand)) { found = true; break; }
            if (!found) {
                res.equivalent = false;
                res.failing_side = side;
                res.counterexample = w;
                return false;
            }
        }
        return true;
    };

    EquivalenceResult res;
    if (!one_inclusion(a, b, 0, res)) return res;
    one_inclusion(b, a, 1, res);
    return res;
}

} // namespace grata
