#include "grata/analysis.hpp"

#include "grata/determinize.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace grata {

std::string to_string(const PortMap& m) {
    std::string out = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += i ? ", " : "";
        out += "(" + std::to_string(m[i].first) + "," + std::to_string(m[i].second) + ")";
    }
    return out + "}";
}

std::string to_string(const FollowItem& item) {
    return "(" + item.first + ", " + to_string(item.second) + ")";
}

std::string describe_transition(const Automaton& a, std::size_t t) {
    const Transition& tr = a.transitions[t];
    return "d" + std::to_string(t + 1) + " (" + tr.from + " --" + tr.symbol.to_string() + "--> " +
           tr.to + ")";
}

namespace {

void require_recognition_form(const Automaton& a) {
    auto v = recognition_form_violations(a);
    if (v.empty()) return;
    std::string msg = "automaton is not in recognition form";
    for (const auto& s : v) msg += "\n  " + s;
    throw std::runtime_error(msg);
}

PortMap identity_map(unsigned rank) {
    PortMap m;
    m.reserve(rank);
    for (unsigned i = 1; i <= rank; ++i) m.push_back({i, i});
    return m;
}

// Port map of the read performed by `sym` seen through mu: attachment
// position i maps to tracked position j when i = phi(mu(j)).
PortMap read_ports(const AtomSymbol& sym, const PortMap& mu) {
    PortMap xi;
    for (auto [j, muj] : mu) {
        unsigned val = sym.phi[muj - 1];
        if (val <= sym.rank) xi.push_back({val, j});
    }
    std::sort(xi.begin(), xi.end());
    return xi;
}

// Propagation of mu across a move reading `sym`: tracked position i survives
// at target position j when phi(mu(i)) = rho(j).
PortMap propagate(const AtomSymbol& sym, const PortMap& mu) {
    PortMap out;
    for (auto [i, mui] : mu) {
        unsigned val = sym.phi[mui - 1];
        for (unsigned j = 0; j < sym.rho.size(); ++j)
            if (sym.rho[j] == val) { out.push_back({i, j + 1}); break; }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

FollowItem next_of(const Automaton& a, std::size_t transition) {
    const Transition& t = a.transitions.at(transition);
    if (t.symbol.is_blank())
        throw std::runtime_error("next is undefined for blank transitions");
    const AtomSymbol& sym = t.symbol.atom();
    PortMap xi;
    for (unsigned i = 0; i < sym.phi.size(); ++i)
        if (sym.phi[i] <= sym.rank) xi.push_back({sym.phi[i], i + 1});
    std::sort(xi.begin(), xi.end());
    return {sym.label, xi};
}

FollowSet follow_of(const Automaton& a, std::size_t t0) {
    require_recognition_form(a);
    const Transition& start = a.transitions.at(t0);
    unsigned source_rank = *a.state_rank(start.from);

    FollowSet follow;
    using Item = std::pair<std::size_t, PortMap>;
    std::set<Item> done;
    std::deque<Item> frontier{{t0, identity_map(source_rank)}};
    while (!frontier.empty()) {
        Item item = frontier.front();
        frontier.pop_front();
        if (done.count(item)) continue;
        done.insert(item);
        const Transition& t = a.transitions[item.first];
        if (t.symbol.is_blank()) continue;
        const AtomSymbol& sym = t.symbol.atom();
        follow.insert({sym.label, read_ports(sym, item.second)});
        PortMap mu2 = propagate(sym, item.second);
        for (std::size_t succ : a.transitions_from(t.to)) {
            Item next{succ, mu2};
            if (!done.count(next)) frontier.push_back(next);
        }
    }
    return follow;
}

TsResult ts_check(const Automaton& a) {
    require_valid(a);
    require_recognition_form(a);
    TsResult result;
    result.holds = true;

    std::vector<FollowSet> follows(a.transitions.size());
    std::vector<FollowItem> nexts(a.transitions.size());
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        if (a.transitions[t].symbol.is_blank()) continue;
        follows[t] = follow_of(a, t);
        nexts[t] = next_of(a, t);
    }

    for (const State& st : a.states) {
        std::vector<std::size_t> atoms, blanks;
        for (std::size_t t : a.transitions_from(st.name))
            (a.transitions[t].symbol.is_blank() ? blanks : atoms).push_back(t);

        // d precedes d' when d' reads something a continuation of d can read.
        std::vector<std::vector<bool>> prec(atoms.size(), std::vector<bool>(atoms.size(), false));
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = 0; j < atoms.size(); ++j)
                if (i != j && follows[atoms[i]].count(nexts[atoms[j]])) prec[i][j] = true;

        // Topological sort, lowest transition index first among the ready.
        std::vector<unsigned> indeg(atoms.size(), 0);
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = 0; j < atoms.size(); ++j)
                if (prec[i][j]) ++indeg[j];
        std::vector<bool> emitted(atoms.size(), false);
        StateOrder order;
        for (std::size_t step = 0; step < atoms.size(); ++step) {
            std::size_t pick = atoms.size();
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (!emitted[i] && indeg[i] == 0 && (pick == atoms.size() || atoms[i] < atoms[pick]))
                    pick = i;
            if (pick == atoms.size()) break; // cycle
            emitted[pick] = true;
            order.atoms.push_back(atoms[pick]);
            for (std::size_t j = 0; j < atoms.size(); ++j)
                if (prec[pick][j] && --indeg[j] == 0) continue;
        }
        if (order.atoms.size() != atoms.size()) {
            result.holds = false;
            result.cycle_state = st.name;
            // Every unemitted transition keeps an unemitted predecessor, so
            // walking predecessors must revisit one; that loop is the witness.
            std::vector<std::size_t> walk;
            std::size_t cur = 0;
            while (emitted[cur]) ++cur;
            std::set<std::size_t> seen;
            while (!seen.count(cur)) {
                seen.insert(cur);
                walk.push_back(cur);
                for (std::size_t j = 0; j < atoms.size(); ++j)
                    if (!emitted[j] && prec[j][cur]) { cur = j; break; }
            }
            auto begin = std::find(walk.begin(), walk.end(), cur);
            for (auto it = begin; it != walk.end(); ++it) result.cycle.push_back(atoms[*it]);
            std::reverse(result.cycle.begin(), result.cycle.end());
            result.orders.clear();
            return result;
        }
        order.blanks = blanks;
        result.orders[st.name] = std::move(order);
    }
    return result;
}

bool deferrable(const Automaton& a, std::size_t transition) {
    require_recognition_form(a);
    const Transition& t = a.transitions.at(transition);
    if (t.symbol.is_blank())
        throw std::runtime_error("deferrable is defined for non-blank transitions");
    const AtomSymbol& sym = t.symbol.atom();
    unsigned source_rank = *a.state_rank(t.from);
    PortMap xi0 = next_of(a, transition).second;

    // Follow propagation seeded past t's own move; t's edge is deferrable
    // when a later occurrence of t can perform the same read.
    PortMap mu0 = propagate(sym, identity_map(source_rank));
    using Item = std::pair<std::size_t, PortMap>;
    std::set<Item> done;
    std::deque<Item> frontier;
    for (std::size_t succ : a.transitions_from(t.to)) frontier.push_back({succ, mu0});
    while (!frontier.empty()) {
        Item item = frontier.front();
        frontier.pop_front();
        if (done.count(item)) continue;
        done.insert(item);
        const Transition& cur = a.transitions[item.first];
        if (cur.symbol.is_blank()) continue;
        const AtomSymbol& cs = cur.symbol.atom();
        if (item.first == transition && read_ports(cs, item.second) == xi0) return true;
        PortMap mu2 = propagate(cs, item.second);
        for (std::size_t succ : a.transitions_from(cur.to)) {
            Item next{succ, mu2};
            if (!done.count(next)) frontier.push_back(next);
        }
    }
    return false;
}

FecResult fec_test(const Automaton& a) {
    require_recognition_form(a);
    FecResult result;
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        const Transition& tr = a.transitions[t];
        if (tr.symbol.is_blank()) continue;
        if (!deferrable(a, t)) continue;
        const AtomSymbol& sym = tr.symbol.atom();
        std::set<unsigned> phi_set(sym.phi.begin(), sym.phi.end());
        bool subset = std::all_of(sym.rho.begin(), sym.rho.end(),
                                  [&](unsigned x) { return phi_set.count(x) != 0; });
        if (!subset) result.offending.push_back(t);
    }
    result.passes = result.offending.empty();
    return result;
}

AnalysisReport analyze(const Automaton& a) {
    AnalysisReport r;
    r.violations = validate_automaton(a);
    if (!r.valid()) return r;
    r.form_violations = recognition_form_violations(a);
    r.deterministic = is_deterministic(a);
    if (!r.recognition_form()) return r;
    r.ts = ts_check(a);
    for (std::size_t t = 0; t < a.transitions.size(); ++t)
        if (!a.transitions[t].symbol.is_blank() && deferrable(a, t)) r.deferrables.push_back(t);
    r.fec = fec_test(a);
    return r;
}

std::string format_report(const Automaton& a, const AnalysisReport& r) {
    std::string out;
    auto line = [&](const std::string& k, const std::string& v) { out += k + ": " + v + "\n"; };
    line("automaton", a.name.empty() ? "(unnamed)" : a.name);
    line("states", std::to_string(a.states.size()));
    line("transitions", std::to_string(a.transitions.size()));
    if (!r.valid()) {
        for (const auto& v : r.violations) line("invalid", v);
        return out;
    }
    line("deterministic", r.deterministic ? "yes" : "no");
    if (!r.recognition_form()) {
        for (const auto& v : r.form_violations) line("recognition-form", "no (" + v + ")");
        return out;
    }
    line("recognition-form", "yes");
    if (r.ts.holds) {
        line("ts", "yes");
        for (const auto& [state, order] : r.ts.orders) {
            if (order.atoms.size() < 2) continue;
            std::string seq;
            for (std::size_t i = 0; i < order.atoms.size(); ++i) {
                seq += i ? " < " : "";
                seq += "d" + std::to_string(order.atoms[i] + 1);
            }
            line("order[" + state + "]", seq);
        }
    } else {
        std::string cyc;
        for (std::size_t i = 0; i < r.ts.cycle.size(); ++i) {
            cyc += i ? " < " : "";
            cyc += "d" + std::to_string(r.ts.cycle[i] + 1);
        }
        line("ts", "no (cycle at " + r.ts.cycle_state + ": " + cyc + ")");
    }
    std::string defs;
    for (std::size_t i = 0; i < r.deferrables.size(); ++i) {
        defs += i ? ", " : "";
        defs += "d" + std::to_string(r.deferrables[i] + 1);
    }
    line("deferrable", r.deferrables.empty() ? "(none)" : defs);
    if (r.fec.passes) {
        line("fec", "PASS");
    } else {
        std::string msg = "FAIL (";
        for (std::size_t i = 0; i < r.fec.offending.size(); ++i) {
            const AtomSymbol& sym = a.transitions[r.fec.offending[i]].symbol.atom();
            std::string rho = "{", phi = "{";
            for (std::size_t k = 0; k < sym.rho.size(); ++k)
                rho += (k ? "," : "") + std::to_string(sym.rho[k]);
            for (std::size_t k = 0; k < sym.phi.size(); ++k)
                phi += (k ? "," : "") + std::to_string(sym.phi[k]);
            msg += (i ? "; " : "") + ("d" + std::to_string(r.fec.offending[i] + 1)) + ": " + rho +
                   "} is not a subset of " + phi + "}";
        }
        line("fec", msg + ")");
    }
    line("analysis", r.ok() ? "PASS" : "FAIL");
    return out;
}

} // namespace grata
