#include "grata/alphabet.hpp"

#include <cctype>
#include <stdexcept>

namespace grata {

namespace {
constexpr const char* kReserved = "[]|(),;~{}:#";
}

bool is_valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        for (const char* r = kReserved; *r; ++r)
            if (c == *r) return false;
    }
    return true;
}

void RankedAlphabet::add(const std::string& label, unsigned rank) {
    if (!is_valid_name(label))
        throw std::runtime_error("invalid label name '" + label + "'");
    if (entries_.count(label))
        throw std::runtime_error("duplicate label '" + label + "'");
    entries_[label] = rank;
}

std::optional<unsigned> RankedAlphabet::rank_of(const std::string& label) const {
    auto it = entries_.find(label);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

} // namespace grata
