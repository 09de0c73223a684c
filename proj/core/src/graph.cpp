#include "grata/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace grata {

NodeId Graph::add_node(std::string name) {
    node_names_.push_back(std::move(name));
    return static_cast<NodeId>(node_names_.size() - 1);
}

EdgeId Graph::add_edge(std::string label, std::vector<NodeId> att) {
    return add_edge_named("e" + std::to_string(edges_.size()), std::move(label), std::move(att));
}

EdgeId Graph::add_edge_named(std::string name, std::string label, std::vector<NodeId> att) {
    edges_.push_back(Edge{std::move(name), std::move(label), std::move(att)});
    return static_cast<EdgeId>(edges_.size() - 1);
}

std::optional<NodeId> Graph::find_node(const std::string& name) const {
    for (NodeId v = 0; v < node_names_.size(); ++v)
        if (node_names_[v] == name) return v;
    return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(const std::string& name) const {
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].name == name) return e;
    return std::nullopt;
}

std::vector<unsigned> Graph::degrees() const {
    std::vector<unsigned> deg(node_count(), 0);
    for (const Edge& e : edges_)
        for (NodeId v : e.att) ++deg[v];
    return deg;
}

namespace {

template <typename T>
std::optional<T> first_repetition(const std::vector<T>& xs) {
    std::set<T> seen;
    for (const T& x : xs)
        if (!seen.insert(x).second) return x;
    return std::nullopt;
}

} // namespace

std::vector<std::string> validate_graph(const GraphDraft& draft, const RankedAlphabet* sigma) {
    std::vector<std::string> out;
    std::set<std::string> nodes;
    for (const auto& n : draft.nodes) {
        if (!is_valid_name(n)) out.push_back("invalid node identifier '" + n + "'");
        if (!nodes.insert(n).second) out.push_back("duplicate node identifier '" + n + "'");
    }
    auto check_seq = [&](const std::vector<std::string>& seq, const std::string& what) {
        if (auto r = first_repetition(seq))
            out.push_back(what + " repeats identifier '" + *r + "'");
        for (const auto& n : seq)
            if (!nodes.count(n)) out.push_back(what + " references undeclared node '" + n + "'");
    };
    check_seq(draft.front, "front interface");
    check_seq(draft.rear, "rear interface");

    std::map<std::string, unsigned> inferred;
    for (std::size_t i = 0; i < draft.edges.size(); ++i) {
        const auto& e = draft.edges[i];
        std::string where = "edge #" + std::to_string(i) + " (" + e.label + ")";
        if (sigma) {
            auto r = sigma->rank_of(e.label);
            if (!r)
                out.push_back(where + ": unknown label '" + e.label + "'");
            else if (*r != e.att.size())
                out.push_back(where + ": attachment arity " + std::to_string(e.att.size()) +
                              " does not match rank " + std::to_string(*r));
        } else {
            auto [it, fresh] = inferred.emplace(e.label, e.att.size());
            if (!fresh && it->second != e.att.size())
                out.push_back(where + ": inconsistent arity for label '" + e.label + "'");
        }
        if (auto r = first_repetition(e.att))
            out.push_back(where + ": attachment repeats node '" + *r + "'");
        for (const auto& n : e.att)
            if (!nodes.count(n)) out.push_back(where + ": references undeclared node '" + n + "'");
    }
    return out;
}

Graph build_graph(const GraphDraft& draft, const RankedAlphabet* sigma) {
    auto violations = validate_graph(draft, sigma);
    if (!violations.empty()) {
        std::string msg = "invalid graph";
        if (!draft.name.empty()) msg += " '" + draft.name + "'";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::runtime_error(msg);
    }
    Graph g;
    std::unordered_map<std::string, NodeId> id;
    for (const auto& n : draft.nodes) id[n] = g.add_node(n);
    auto resolve = [&](const std::vector<std::string>& names) {
        std::vector<NodeId> out;
        out.reserve(names.size());
        for (const auto& n : names) out.push_back(id.at(n));
        return out;
    };
    for (const auto& e : draft.edges) g.add_edge(e.label, resolve(e.att));
    g.set_front(resolve(draft.front));
    g.set_rear(resolve(draft.rear));
    return g;
}

std::vector<std::string> validate_graph(const Graph& g, const RankedAlphabet& sigma) {
    GraphDraft d;
    d.nodes = g.node_names();
    for (NodeId v : g.front()) d.front.push_back(g.node_name(v));
    for (NodeId v : g.rear()) d.rear.push_back(g.node_name(v));
    for (const Edge& e : g.edges()) {
        GraphDraft::DraftEdge de;
        de.label = e.label;
        for (NodeId v : e.att) de.att.push_back(g.node_name(v));
        d.edges.push_back(std::move(de));
    }
    return validate_graph(d, &sigma);
}

RankedAlphabet infer_alphabet(const Graph& g) {
    RankedAlphabet sigma;
    for (const Edge& e : g.edges())
        if (!sigma.contains(e.label)) sigma.add(e.label, static_cast<unsigned>(e.att.size()));
    return sigma;
}

namespace {

std::string fresh_name(std::string base, const std::unordered_set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (unsigned k = 2;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!taken.count(candidate)) return candidate;
    }
}

} // namespace

Graph compose(const Graph& g, const Graph& h) {
    if (g.rear().size() != h.front().size())
        throw std::runtime_error("composition type mismatch: rear rank " +
                                 std::to_string(g.rear().size()) + " vs front rank " +
                                 std::to_string(h.front().size()));
    Graph c;
    std::unordered_set<std::string> node_taken, edge_taken;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        c.add_node(g.node_name(v));
        node_taken.insert(g.node_name(v));
    }
    // h's front nodes are identified with g's rear nodes, position by position.
    std::vector<NodeId> h_map(h.node_count(), 0);
    std::vector<bool> glued(h.node_count(), false);
    for (std::size_t i = 0; i < h.front().size(); ++i) {
        h_map[h.front()[i]] = g.rear()[i];
        glued[h.front()[i]] = true;
    }
    for (NodeId v = 0; v < h.node_count(); ++v) {
        if (glued[v]) continue;
        std::string name = fresh_name(h.node_name(v), node_taken);
        node_taken.insert(name);
        h_map[v] = c.add_node(std::move(name));
    }
    for (const Edge& e : g.edges()) {
        c.add_edge_named(e.name, e.label, e.att);
        edge_taken.insert(e.name);
    }
    for (const Edge& e : h.edges()) {
        std::vector<NodeId> att;
        att.reserve(e.att.size());
        for (NodeId v : e.att) att.push_back(h_map[v]);
        std::string name = fresh_name(e.name, edge_taken);
        edge_taken.insert(name);
        c.add_edge_named(std::move(name), e.label, std::move(att));
    }
    c.set_front(g.front());
    std::vector<NodeId> rear;
    rear.reserve(h.rear().size());
    for (NodeId v : h.rear()) rear.push_back(h_map[v]);
    c.set_rear(std::move(rear));
    return c;
}

namespace {

// Node signature used to prune the isomorphism search: degree plus the
// multiset of (label, attachment position) incidences and interface positions.
struct NodeSig {
    std::vector<std::pair<std::string, unsigned>> incidences;
    std::vector<int> front_pos, rear_pos;
    bool operator==(const NodeSig&) const = default;
};

std::vector<NodeSig> node_signatures(const Graph& g) {
    std::vector<NodeSig> sig(g.node_count());
    for (const Edge& e : g.edges())
        for (unsigned k = 0; k < e.att.size(); ++k)
            sig[e.att[k]].incidences.emplace_back(e.label, k);
    for (auto& s : sig) std::sort(s.incidences.begin(), s.incidences.end());
    for (std::size_t i = 0; i < g.front().size(); ++i) sig[g.front()[i]].front_pos.push_back(int(i));
    for (std::size_t i = 0; i < g.rear().size(); ++i) sig[g.rear()[i]].rear_pos.push_back(int(i));
    return sig;
}

struct IsoSearch {
    const Graph& g;
    const Graph& h;
    std::vector<NodeSig> gs, hs;
    std::vector<int> nmap;       // g node -> h node or -1
    std::vector<bool> hused;
    std::vector<int> emap;       // g edge -> h edge or -1
    std::vector<bool> heused;

    IsoSearch(const Graph& g_, const Graph& h_)
        : g(g_), h(h_), gs(node_signatures(g_)), hs(node_signatures(h_)),
          nmap(g_.node_count(), -1), hused(h_.node_count(), false),
          emap(g_.edge_count(), -1), heused(h_.edge_count(), false) {}

    bool assign(NodeId a, NodeId b) {
        if (nmap[a] != -1) return nmap[a] == int(b);
        if (hused[b] || !(gs[a] == hs[b])) return false;
        nmap[a] = int(b);
        hused[b] = true;
        return true;
    }

    bool match_edges(std::size_t next) {
        if (next == g.edge_count()) return finish_nodes();
        const Edge& ge = g.edges()[next];
        for (EdgeId f = 0; f < h.edge_count(); ++f) {
            if (heused[f]) continue;
            const Edge& he = h.edges()[f];
            if (he.label != ge.label || he.att.size() != ge.att.size()) continue;
            std::vector<NodeId> touched;
            bool ok = true;
            for (unsigned k = 0; k < ge.att.size() && ok; ++k) {
                NodeId a = ge.att[k], b = he.att[k];
                bool was_unmapped = nmap[a] == -1;
                if (!assign(a, b)) { ok = false; break; }
                if (was_unmapped) touched.push_back(a);
            }
            if (ok) {
                heused[f] = true;
                emap[next] = int(f);
                if (match_edges(next + 1)) return true;
                heused[f] = false;
                emap[next] = -1;
            }
            for (NodeId a : touched) {
                hused[nmap[a]] = false;
                nmap[a] = -1;
            }
        }
        return false;
    }

    bool finish_nodes() {
        // Remaining unmapped nodes are isolated; pair them by signature.
        std::vector<NodeId> left;
        for (NodeId a = 0; a < g.node_count(); ++a)
            if (nmap[a] == -1) left.push_back(a);
        std::vector<NodeId> right;
        for (NodeId b = 0; b < h.node_count(); ++b)
            if (!hused[b]) right.push_back(b);
        if (left.size() != right.size()) return false;
        std::vector<bool> taken(right.size(), false);
        for (NodeId a : left) {
            bool found = false;
            for (std::size_t j = 0; j < right.size(); ++j) {
                if (taken[j] || !(gs[a] == hs[right[j]])) continue;
                nmap[a] = int(right[j]);
                taken[j] = true;
                found = true;
                break;
            }
            if (!found) return false;
        }
        return true;
    }
};

} // namespace

std::optional<Isomorphism> find_isomorphism(const Graph& g, const Graph& h) {
    if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count()) return std::nullopt;
    if (g.type() != h.type()) return std::nullopt;
    {
        std::multiset<std::string> gl, hl;
        for (const Edge& e : g.edges()) gl.insert(e.label);
        for (const Edge& e : h.edges()) hl.insert(e.label);
        if (gl != hl) return std::nullopt;
    }
    IsoSearch s(g, h);
    // Interface correspondences are forced.
    for (std::size_t i = 0; i < g.front().size(); ++i)
        if (!s.assign(g.front()[i], h.front()[i])) return std::nullopt;
    for (std::size_t i = 0; i < g.rear().size(); ++i)
        if (!s.assign(g.rear()[i], h.rear()[i])) return std::nullopt;
    if (!s.match_edges(0)) return std::nullopt;
    Isomorphism iso;
    iso.node_map.assign(s.nmap.begin(), s.nmap.end());
    iso.edge_map.assign(s.emap.begin(), s.emap.end());
    return iso;
}

bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

} // namespace grata
