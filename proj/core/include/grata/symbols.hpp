// The canonical typed alphabet over a ranked alphabet.
//
// An atom denotes a single-edge graph on nodes 1..n with the edge attached to
// 1..rank, front interface phi and rear interface rho. A blank denotes the
// discrete graph on 1..n with front 1..n and rear rho; blanks play the role
// epsilon plays for strings. Symbol literals are written `label[phi|rho]` for
// atoms and `~n[rho]` for blanks, e.g. `a[1,3|1,2,3]`, `~4[4]`, `~2[1,2]`.
#pragma once

#include "grata/graph.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace grata {

using IndexSeq = std::vector<unsigned>; // 1-based node indices, repetition-free

struct AtomSymbol {
    std::string label;
    unsigned rank = 0;  // rank(label); attachment positions are 1..rank
    IndexSeq phi;       // front interface
    IndexSeq rho;       // rear interface
    unsigned node_count = 0;

    auto operator<=>(const AtomSymbol&) const = default;
};

struct BlankSymbol {
    unsigned node_count = 0;
    IndexSeq rho;

    auto operator<=>(const BlankSymbol&) const = default;
};

class TypedSymbol {
public:
    TypedSymbol() : v_(BlankSymbol{0, {}}) {}
    TypedSymbol(AtomSymbol a) : v_(std::move(a)) {}
    TypedSymbol(BlankSymbol b) : v_(std::move(b)) {}

    bool is_blank() const { return std::holds_alternative<BlankSymbol>(v_); }
    bool is_atom() const { return std::holds_alternative<AtomSymbol>(v_); }
    const AtomSymbol& atom() const { return std::get<AtomSymbol>(v_); }
    const BlankSymbol& blank() const { return std::get<BlankSymbol>(v_); }

    /// (front rank, rear rank)
    std::pair<unsigned, unsigned> type() const;

    std::string to_string() const;

    auto operator<=>(const TypedSymbol&) const = default;

private:
    std::variant<AtomSymbol, BlankSymbol> v_;
};

using SymbolString = std::vector<TypedSymbol>;

/// Constructs an atom, checking [phi] ∪ [1..rank] = [1..n] with phi and rho
/// repetition-free over [1..n]. Throws std::runtime_error otherwise.
TypedSymbol make_atom(std::string label, unsigned rank, IndexSeq phi, IndexSeq rho);

/// Constructs a blank over n nodes with rear rho ⊆ [1..n]. Throws on violation.
TypedSymbol make_blank(unsigned n, IndexSeq rho);

/// The identity blank ~n[1..n].
TypedSymbol identity_blank(unsigned n);
bool is_identity_blank(const TypedSymbol& s);

/// Parses a symbol literal. Atoms need the alphabet to resolve the label rank.
TypedSymbol parse_symbol(const std::string& text, const RankedAlphabet& sigma);

std::string to_string(const SymbolString& w);
bool is_typed(const SymbolString& w);
std::pair<unsigned, unsigned> type_of(const SymbolString& w); // requires typed, non-empty

/// Denotation of a symbol as a graph on nodes named "1".."n". Checks the atom
/// label against `sigma` (unknown label / rank mismatch throw).
Graph interpret(const TypedSymbol& s, const RankedAlphabet& sigma);

/// Denotation without alphabet checks (the symbol carries its rank).
Graph interpret_unchecked(const TypedSymbol& s);

/// Left fold of compose over the interpretations. Requires w typed, non-empty.
Graph interpret_string(const SymbolString& w, const RankedAlphabet& sigma);

/// Inverse of interpretation for basic graphs: g must have at most one edge
/// and every node in the front or attached to the edge. Returns the unique
/// symbol with interpret(result) isomorphic to g. Numbering: attached nodes
/// take 1..rank in attachment order, remaining front-only nodes follow in
/// front order.
TypedSymbol canonicalize(const Graph& g);

/// Composition at the symbol level; defined when at least one operand is a
/// blank and the types chain. Equals canonicalize(compose(⟦x⟧, ⟦y⟧)).
TypedSymbol compose_symbols(const TypedSymbol& x, const TypedSymbol& y);

/// Do u and v denote isomorphic graphs?
bool similar(const SymbolString& u, const SymbolString& v, const RankedAlphabet& sigma);

/// The canonical form with the rear interface erased. Two distinct atoms can
/// be padded by blanks into similar strings iff their erased forms are equal.
AtomSymbol erase_rear_form(const AtomSymbol& a);

/// Writes g as atoms followed by one blank such that interpreting the result
/// re-composes g (up to isomorphism). Edges are peeled lowest-index first; the
/// working front is extended by each edge's attachment nodes (attachment order
/// first, then the previous front). Requires every isolated node of g to occur
/// in the front.
SymbolString decompose(const Graph& g);

} // namespace grata
