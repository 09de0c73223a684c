#include "grata/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace grata {

namespace {

bool repetition_free(const IndexSeq& xs) {
    std::set<unsigned> seen(xs.begin(), xs.end());
    return seen.size() == xs.size();
}

std::string seq_to_string(const IndexSeq& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out;
}

} // namespace

std::pair<unsigned, unsigned> TypedSymbol::type() const {
    if (is_atom())
        return {static_cast<unsigned>(atom().phi.size()), static_cast<unsigned>(atom().rho.size())};
    return {blank().node_count, static_cast<unsigned>(blank().rho.size())};
}

std::string TypedSymbol::to_string() const {
    if (is_atom())
        return atom().label + "[" + seq_to_string(atom().phi) + "|" + seq_to_string(atom().rho) + "]";
    return "~" + std::to_string(blank().node_count) + "[" + seq_to_string(blank().rho) + "]";
}

TypedSymbol make_atom(std::string label, unsigned rank, IndexSeq phi, IndexSeq rho) {
    if (!is_valid_name(label)) throw std::runtime_error("invalid label name '" + label + "'");
    if (!repetition_free(phi))
        throw std::runtime_error("atom front interface repeats an index");
    if (!repetition_free(rho))
        throw std::runtime_error("atom rear interface repeats an index");
    std::set<unsigned> covered(phi.begin(), phi.end());
    for (unsigned k = 1; k <= rank; ++k) covered.insert(k);
    unsigned n = static_cast<unsigned>(covered.size());
    for (unsigned k = 1; k <= n; ++k)
        if (!covered.count(k))
            throw std::runtime_error("atom node indices are not contiguous: missing " +
                                     std::to_string(k));
    for (unsigned k : rho)
        if (k < 1 || k > n)
            throw std::runtime_error("atom rear index " + std::to_string(k) + " out of range");
    return TypedSymbol(AtomSymbol{std::move(label), rank, std::move(phi), std::move(rho), n});
}

TypedSymbol make_blank(unsigned n, IndexSeq rho) {
    if (!repetition_free(rho))
        throw std::runtime_error("blank rear interface repeats an index");
    for (unsigned k : rho)
        if (k < 1 || k > n)
            throw std::runtime_error("blank rear index " + std::to_string(k) + " out of range");
    return TypedSymbol(BlankSymbol{n, std::move(rho)});
}

TypedSymbol identity_blank(unsigned n) {
    IndexSeq rho(n);
    for (unsigned i = 0; i < n; ++i) rho[i] = i + 1;
    return make_blank(n, std::move(rho));
}

bool is_identity_blank(const TypedSymbol& s) {
    if (!s.is_blank()) return false;
    const auto& b = s.blank();
    if (b.rho.size() != b.node_count) return false;
    for (unsigned i = 0; i < b.node_count; ++i)
        if (b.rho[i] != i + 1) return false;
    return true;
}

namespace {

struct LiteralCursor {
    std::string s;
    std::size_t pos = 0;

    explicit LiteralCursor(const std::string& text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::runtime_error("malformed symbol literal '" + s + "': expected '" +
                                     std::string(1, c) + "'");
    }
    unsigned number() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start)
            throw std::runtime_error("malformed symbol literal '" + s + "': expected number");
        return static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
    }
    IndexSeq index_list(char stop) {
        IndexSeq out;
        if (pos < s.size() && s[pos] == stop) return out;
        out.push_back(number());
        while (eat(',')) out.push_back(number());
        return out;
    }
};

} // namespace

TypedSymbol parse_symbol(const std::string& text, const RankedAlphabet& sigma) {
    LiteralCursor c(text);
    if (c.eat('~')) {
        unsigned n = c.number();
        c.expect('[');
        IndexSeq rho = c.index_list(']');
        c.expect(']');
        if (c.pos != c.s.size())
            throw std::runtime_error("trailing characters in symbol literal '" + c.s + "'");
        return make_blank(n, std::move(rho));
    }
    std::size_t bracket = c.s.find('[');
    if (bracket == std::string::npos || bracket == 0)
        throw std::runtime_error("malformed symbol literal '" + c.s + "'");
    std::string label = c.s.substr(0, bracket);
    c.pos = bracket + 1;
    IndexSeq phi = c.index_list('|');
    c.expect('|');
    IndexSeq rho = c.index_list(']');
    c.expect(']');
    if (c.pos != c.s.size())
        throw std::runtime_error("trailing characters in symbol literal '" + c.s + "'");
    auto rank = sigma.rank_of(label);
    if (!rank) throw std::runtime_error("unknown label '" + label + "' in symbol literal");
    return make_atom(std::move(label), *rank, std::move(phi), std::move(rho));
}

std::string to_string(const SymbolString& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += w[i].to_string();
    }
    return out;
}

bool is_typed(const SymbolString& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i - 1].type().second != w[i].type().first) return false;
    return true;
}

std::pair<unsigned, unsigned> type_of(const SymbolString& w) {
    if (!is_typed(w)) throw std::runtime_error("symbol string is not typed: " + to_string(w));
    return {w.front().type().first, w.back().type().second};
}

Graph interpret_unchecked(const TypedSymbol& s) {
    Graph g;
    unsigned n = s.is_atom() ? s.atom().node_count : s.blank().node_count;
    for (unsigned i = 1; i <= n; ++i) g.add_node(std::to_string(i));
    auto to_ids = [](const IndexSeq& xs) {
        std::vector<NodeId> out;
        out.reserve(xs.size());
        for (unsigned k : xs) out.push_back(k - 1);
        return out;
    };
    if (s.is_atom()) {
        const AtomSymbol& a = s.atom();
        std::vector<NodeId> att(a.rank);
        for (unsigned k = 0; k < a.rank; ++k) att[k] = k;
        g.add_edge(a.label, std::move(att));
        g.set_front(to_ids(a.phi));
        g.set_rear(to_ids(a.rho));
    } else {
        const BlankSymbol& b = s.blank();
        std::vector<NodeId> front(n);
        for (unsigned i = 0; i < n; ++i) front[i] = i;
        g.set_front(std::move(front));
        g.set_rear(to_ids(b.rho));
    }
    return g;
}

Graph interpret(const TypedSymbol& s, const RankedAlphabet& sigma) {
    if (s.is_atom()) {
        auto rank = sigma.rank_of(s.atom().label);
        if (!rank) throw std::runtime_error("unknown label '" + s.atom().label + "'");
        if (*rank != s.atom().rank)
            throw std::runtime_error("label '" + s.atom().label + "' has rank " +
                                     std::to_string(*rank) + ", symbol uses " +
                                     std::to_string(s.atom().rank));
    }
    return interpret_unchecked(s);
}

Graph interpret_string(const SymbolString& w, const RankedAlphabet& sigma) {
    if (w.empty()) throw std::runtime_error("cannot interpret the empty symbol string");
    if (!is_typed(w)) throw std::runtime_error("symbol string is not typed: " + to_string(w));
    Graph g = interpret(w[0], sigma);
    for (std::size_t i = 1; i < w.size(); ++i) g = compose(g, interpret(w[i], sigma));
    return g;
}

TypedSymbol canonicalize(const Graph& g) {
    if (g.edge_count() > 1)
        throw std::runtime_error("canonicalize requires at most one edge, got " +
                                 std::to_string(g.edge_count()));
    constexpr unsigned kUnset = 0;
    std::vector<unsigned> number(g.node_count(), kUnset); // node -> 1-based canonical index
    unsigned next = 1;
    if (g.edge_count() == 1) {
        for (NodeId v : g.edge(0).att) number[v] = next++;
    }
    for (NodeId v : g.front())
        if (number[v] == kUnset) number[v] = next++;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (number[v] == kUnset)
            throw std::runtime_error("canonicalize: node '" + g.node_name(v) +
                                     "' is neither attached nor in the front interface");
    auto project = [&](const std::vector<NodeId>& seq) {
        IndexSeq out;
        out.reserve(seq.size());
        for (NodeId v : seq) out.push_back(number[v]);
        return out;
    };
    if (g.edge_count() == 1) {
        const Edge& e = g.edge(0);
        return make_atom(e.label, static_cast<unsigned>(e.att.size()), project(g.front()),
                         project(g.rear()));
    }
    return make_blank(static_cast<unsigned>(g.node_count()), project(g.rear()));
}

TypedSymbol compose_symbols(const TypedSymbol& x, const TypedSymbol& y) {
    if (x.is_atom() && y.is_atom())
        throw std::runtime_error("symbol composition needs at least one blank operand");
    if (x.type().second != y.type().first)
        throw std::runtime_error("symbol composition type mismatch: " + x.to_string() + " then " +
                                 y.to_string());
    return canonicalize(compose(interpret_unchecked(x), interpret_unchecked(y)));
}

bool similar(const SymbolString& u, const SymbolString& v, const RankedAlphabet& sigma) {
    return isomorphic(interpret_string(u, sigma), interpret_string(v, sigma));
}

AtomSymbol erase_rear_form(const AtomSymbol& a) {
    AtomSymbol out = a;
    out.rho.clear();
    return out;
}

SymbolString decompose(const Graph& g) {
    auto deg = g.degrees();
    {
        std::set<NodeId> fr(g.front().begin(), g.front().end());
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (deg[v] == 0 && !fr.count(v))
                throw std::runtime_error("decompose: isolated node '" + g.node_name(v) +
                                         "' does not occur in the front interface");
    }
    SymbolString out;
    std::vector<NodeId> front = g.front();
    for (EdgeId ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edge(ei);
        std::vector<NodeId> next_front = e.att;
        std::set<NodeId> att_set(e.att.begin(), e.att.end());
        for (NodeId v : front)
            if (!att_set.count(v)) next_front.push_back(v);
        // One-edge slice: the peeled edge together with the surrounding interfaces.
        Graph slice;
        std::unordered_map<NodeId, NodeId> to_slice;
        for (NodeId v : next_front) to_slice[v] = slice.add_node(g.node_name(v));
        auto project = [&](const std::vector<NodeId>& seq) {
            std::vector<NodeId> m;
            m.reserve(seq.size());
            for (NodeId v : seq) m.push_back(to_slice.at(v));
            return m;
        };
        slice.add_edge(e.label, project(e.att));
        slice.set_front(project(front));
        slice.set_rear(project(next_front));
        out.push_back(canonicalize(slice));
        front = std::move(next_front);
    }
    Graph rest;
    std::unordered_map<NodeId, NodeId> to_rest;
    for (NodeId v : front) to_rest[v] = rest.add_node(g.node_name(v));
    std::vector<NodeId> rfront, rrear;
    for (NodeId v : front) rfront.push_back(to_rest.at(v));
    for (NodeId v : g.rear()) rrear.push_back(to_rest.at(v));
    rest.set_front(std::move(rfront));
    rest.set_rear(std::move(rrear));
    out.push_back(canonicalize(rest));
    return out;
}

} // namespace grata
