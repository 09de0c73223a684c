#include "grata/determinize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grata {

namespace {

void insert_pair(PSPairSet& set, PSPair p) {
    auto it = std::lower_bound(set.begin(), set.end(), p);
    if (it == set.end() || *it != p) set.insert(it, std::move(p));
}

} // namespace

PSPairSet closure(const Automaton& a, const std::string& q) {
    auto rank = a.state_rank(q);
    if (!rank) throw std::runtime_error("closure: unknown state '" + q + "'");
    PSPairSet out;
    insert_pair(out, PSPair{identity_blank(*rank), q});
    std::deque<PSPair> work(out.begin(), out.end());
    while (!work.empty()) {
        PSPair cur = work.front();
        work.pop_front();
        for (const Transition& t : a.transitions) {
            if (t.from != cur.state || !t.symbol.is_blank()) continue;
            PSPair next{compose_symbols(cur.blank, t.symbol), t.to};
            auto before = out.size();
            insert_pair(out, next);
            if (out.size() != before) work.push_back(next);
        }
    }
    return out;
}

PSPairSet left_compose_state(const TypedSymbol& beta, const PSPairSet& c) {
    if (!beta.is_blank()) throw std::runtime_error("left_compose_state: beta must be a blank");
    if (beta.type().first != beta.type().second)
        throw std::runtime_error("left_compose_state: beta must have type (i,i)");
    PSPairSet out;
    for (const PSPair& p : c) {
        if (beta.type().second != p.blank.type().first)
            throw std::runtime_error("left_compose_state: type mismatch with pair blank " +
                                     p.blank.to_string());
        insert_pair(out, PSPair{compose_symbols(beta, p.blank), p.state});
    }
    return out;
}

std::optional<std::pair<std::size_t, TypedSymbol>> find_quotient(const PSPairSet& y,
                                                                 const std::vector<PSState>& existing,
                                                                 unsigned j) {
    std::multiset<std::string> y_states;
    for (const PSPair& p : y) y_states.insert(p.state);
    for (std::size_t idx = 0; idx < existing.size(); ++idx) {
        const PSState& cand = existing[idx];
        if (cand.is_sink || cand.rank != j || cand.pairs.size() != y.size()) continue;
        std::multiset<std::string> c_states;
        for (const PSPair& p : cand.pairs) c_states.insert(p.state);
        if (c_states != y_states) continue;
        IndexSeq perm(j);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            TypedSymbol beta = make_blank(j, perm);
            if (left_compose_state(beta, cand.pairs) == y)
                return std::make_pair(idx, beta);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

PowersetResult powerset(const Automaton& a) {
    require_valid(a);
    auto [m, n] = a.type();

    std::vector<PSState> states;
    unsigned serial = 0;
    auto add_state = [&](PSPairSet pairs, unsigned rank, bool sink) -> std::size_t {
        PSState s;
        s.name = sink ? "Sf" : "S" + std::to_string(serial++);
        s.pairs = std::move(pairs);
        s.rank = rank;
        s.is_sink = sink;
        states.push_back(std::move(s));
        return states.size() - 1;
    };

    Automaton out;
    out.name = a.name.empty() ? "dfa" : a.name + "_dfa";
    out.alphabet = a.alphabet;

    std::size_t s0 = add_state(closure(a, a.initial), m, false);
    std::size_t sf = add_state({}, n, true);
    std::deque<std::size_t> frontier{s0};

    auto add_transition = [&](std::size_t from, const TypedSymbol& sym, std::size_t to) {
        Transition t{states[from].name, sym, states[to].name};
        for (const Transition& have : out.transitions)
            if (have.from == t.from && have.symbol == t.symbol && have.to == t.to) return;
        out.transitions.push_back(std::move(t));
    };

    while (!frontier.empty()) {
        std::size_t xi = frontier.front();
        frontier.pop_front();
        const PSPairSet x_pairs = states[xi].pairs;

        for (const PSPair& p : x_pairs)
            if (a.is_final(p.state)) add_transition(xi, p.blank, sf);

        // psi: composed non-blank symbol -> original successor states, in
        // first-appearance order.
        std::vector<std::pair<TypedSymbol, std::vector<std::string>>> psi;
        for (const PSPair& p : x_pairs) {
            for (const Transition& t : a.transitions) {
                if (t.from != p.state || t.symbol.is_blank()) continue;
                TypedSymbol composed = compose_symbols(p.blank, t.symbol);
                auto it = std::find_if(psi.begin(), psi.end(),
                                       [&](const auto& kv) { return kv.first == composed; });
                if (it == psi.end()) {
                    psi.push_back({composed, {t.to}});
                } else if (std::find(it->second.begin(), it->second.end(), t.to) ==
                           it->second.end()) {
                    it->second.push_back(t.to);
                }
            }
        }

        for (const auto& [a0, succs] : psi) {
            unsigned j = a0.type().second;
            PSPairSet y;
            for (const std::string& q : succs)
                for (const PSPair& p : closure(a, q)) insert_pair(y, p);
            if (auto quot = find_quotient(y, states, j)) {
                auto [idx, beta] = *quot;
                add_transition(xi, compose_symbols(a0, beta), idx);
            } else {
                std::size_t yi = add_state(std::move(y), j, false);
                frontier.push_back(yi);
                add_transition(xi, a0, yi);
            }
        }
    }

    PowersetResult result;
    for (const PSState& s : states) {
        out.states.push_back(State{s.name, s.rank});
        std::string note = s.name + " = {";
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
            note += i ? ", (" : " (";
            note += s.pairs[i].blank.to_string() + ", " + s.pairs[i].state + ")";
        }
        note += s.pairs.empty() ? "}" : " }";
        result.state_notes.push_back(std::move(note));
    }
    out.initial = states[s0].name;
    out.finals = {states[sf].name};
    require_valid(out);
    result.automaton = std::move(out);
    return result;
}

bool is_deterministic(const Automaton& a) {
    for (std::size_t i = 0; i < a.transitions.size(); ++i)
        for (std::size_t j = i + 1; j < a.transitions.size(); ++j) {
            const Transition& s = a.transitions[i];
            const Transition& t = a.transitions[j];
            if (s.from == t.from && s.symbol == t.symbol && s.to != t.to) return false;
        }
    return true;
}

std::vector<std::pair<TypedSymbol, TypedSymbol>> ambiguous_pairs(const Automaton& a) {
    std::vector<TypedSymbol> atoms = a.atom_symbols();
    std::vector<std::pair<TypedSymbol, TypedSymbol>> out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (erase_rear_form(atoms[i].atom()) == erase_rear_form(atoms[j].atom()))
                out.push_back({atoms[i], atoms[j]});
    return out;
}

Automaton disambiguate(const Automaton& a) {
    Automaton cur = a;
    for (int round = 0; round < 16; ++round) {
        auto pairs = ambiguous_pairs(cur);
        if (pairs.empty()) return cur;

        // Group the offending symbols by their rear-erased form.
        std::set<TypedSymbol> offending;
        for (const auto& [x, y] : pairs) {
            offending.insert(x);
            offending.insert(y);
        }

        Automaton next;
        next.name = cur.name;
        next.alphabet = cur.alphabet;
        next.states = cur.states;
        next.initial = cur.initial;
        next.finals = cur.finals;
        std::set<std::string> names;
        for (const State& s : next.states) names.insert(s.name);
        auto fresh_state = [&](const std::string& base, unsigned rank) {
            std::string name = base + "'";
            while (names.count(name)) name += "'";
            names.insert(name);
            next.states.push_back(State{name, rank});
            return name;
        };

        for (const Transition& t : cur.transitions) {
            if (!offending.count(t.symbol)) {
                next.transitions.push_back(t);
                continue;
            }
            const AtomSymbol& sym = t.symbol.atom();
            IndexSeq full(sym.node_count);
            std::iota(full.begin(), full.end(), 1);
            TypedSymbol general = make_atom(sym.label, sym.rank, sym.phi, full);
            TypedSymbol restore = make_blank(sym.node_count, sym.rho);
            std::string mid = fresh_state(t.to, sym.node_count);
            next.transitions.push_back(Transition{t.from, general, mid});
            next.transitions.push_back(Transition{mid, restore, t.to});
        }
        cur = std::move(next);
    }
    throw std::runtime_error("disambiguate did not converge");
}

} // namespace grata
