// Hypergraphs with ordered front/rear interface node sequences.
//
// A graph glues to a right neighbour by identifying its rear interface with
// the neighbour's front interface (typed composition). Nodes and edges carry
// textual identifiers; internally nodes are dense indices.
#pragma once

#include "grata/alphabet.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grata {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    std::string name;   // stable identifier, unique within the graph
    std::string label;
    std::vector<NodeId> att;
};

class Graph {
public:
    NodeId add_node(std::string name);
    EdgeId add_edge(std::string label, std::vector<NodeId> att);
    EdgeId add_edge_named(std::string name, std::string label, std::vector<NodeId> att);

    void set_front(std::vector<NodeId> front) { front_ = std::move(front); }
    void set_rear(std::vector<NodeId> rear) { rear_ = std::move(rear); }

    std::size_t node_count() const { return node_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& node_name(NodeId v) const { return node_names_[v]; }
    const std::vector<std::string>& node_names() const { return node_names_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<NodeId>& front() const { return front_; }
    const std::vector<NodeId>& rear() const { return rear_; }

    std::optional<NodeId> find_node(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    /// (front rank, rear rank)
    std::pair<unsigned, unsigned> type() const {
        return {static_cast<unsigned>(front_.size()), static_cast<unsigned>(rear_.size())};
    }

    std::vector<unsigned> degrees() const;

private:
    std::vector<std::string> node_names_;
    std::vector<Edge> edges_;
    std::vector<NodeId> front_, rear_;
};

/// Raw graph structure as it appears in a file, before identifier resolution.
/// Keeps everything by name so that validation can report dangling references.
struct GraphDraft {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<std::string> front, rear;
    struct DraftEdge {
        std::string label;
        std::vector<std::string> att;
    };
    std::vector<DraftEdge> edges;
};

/// Returns every structural violation of the draft; empty means the draft is a
/// well-formed graph over `sigma`. Pass nullptr to skip label/rank checks
/// (ranks are then required to be consistent across same-label edges).
std::vector<std::string> validate_graph(const GraphDraft& draft, const RankedAlphabet* sigma);

/// Builds a Graph from a valid draft; throws std::runtime_error listing the
/// violations otherwise. Edge names are auto-assigned (e0, e1, ...).
Graph build_graph(const GraphDraft& draft, const RankedAlphabet* sigma);

/// Re-checks structural invariants of an already-built graph against `sigma`.
std::vector<std::string> validate_graph(const Graph& g, const RankedAlphabet& sigma);

/// Infers a ranked alphabet from the attachment arities used in `g`.
RankedAlphabet infer_alphabet(const Graph& g);

/// Typed composition: glues rear(g) to front(h). Identifiers of g are kept;
/// non-glued nodes and all edges of h are appended, renamed on collision.
/// Throws std::runtime_error if |rear(g)| != |front(h)|.
Graph compose(const Graph& g, const Graph& h);

struct Isomorphism {
    std::vector<NodeId> node_map; // g node -> h node
    std::vector<EdgeId> edge_map; // g edge -> h edge
};

/// Interface-preserving isomorphism test (front/rear sequences must map
/// pointwise). Returns a witness mapping when isomorphic.
std::optional<Isomorphism> find_isomorphism(const Graph& g, const Graph& h);

bool isomorphic(const Graph& g, const Graph& h);

} // namespace grata
