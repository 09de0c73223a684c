// Ranked alphabets: edge label names with fixed arities.
#pragma once

#include <map>
#include <optional>
#include <string>

namespace grata {

/// Characters that may not appear in label names (they delimit the text formats).
bool is_valid_name(const std::string& name);

/// A finite set of edge labels, each with a non-negative rank (arity).
class RankedAlphabet {
public:
    RankedAlphabet() = default;

    /// Adds a label. Throws std::runtime_error on invalid or duplicate names.
    void add(const std::string& label, unsigned rank);

    bool contains(const std::string& label) const { return entries_.count(label) != 0; }
    std::optional<unsigned> rank_of(const std::string& label) const;

    const std::map<std::string, unsigned>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    bool operator==(const RankedAlphabet&) const = default;

private:
    std::map<std::string, unsigned> entries_;
};

} // namespace grata
