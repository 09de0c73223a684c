#include "grata/regex.hpp"

#include <cctype>
#include <stdexcept>

namespace grata {

std::pair<unsigned, unsigned> regex_type(const Regex& e) {
    switch (e.kind) {
    case Regex::Kind::Symbol:
        return e.symbol.type();
    case Regex::Kind::Concat: {
        auto t = regex_type(*e.children.front());
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            auto u = regex_type(*e.children[i]);
            if (t.second != u.first)
                throw std::runtime_error("type error in concatenation '" + e.text + "': " +
                                         std::to_string(t.second) + " does not chain with " +
                                         std::to_string(u.first) + " at '" + e.children[i]->text +
                                         "'");
            t.second = u.second;
        }
        return t;
    }
    case Regex::Kind::Union: {
        auto t = regex_type(*e.children.front());
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            auto u = regex_type(*e.children[i]);
            if (t != u)
                throw std::runtime_error("type error in union '" + e.text +
                                         "': alternatives have different types");
        }
        return t;
    }
    case Regex::Kind::Star:
    case Regex::Kind::Plus: {
        auto t = regex_type(*e.children.front());
        if (t.first != t.second)
            throw std::runtime_error("type error: repetition of '" + e.children.front()->text +
                                     "' needs equal front and rear ranks, got (" +
                                     std::to_string(t.first) + "," + std::to_string(t.second) +
                                     ")");
        return t;
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

struct RegexParser {
    const std::string& src;
    const RankedAlphabet& sigma;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool at(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }
    bool eat(char c) {
        if (at(c)) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::runtime_error("regex error at offset " + std::to_string(pos) + ": " + msg);
    }

    RegexPtr parse() {
        RegexPtr e = parse_union();
        skip_ws();
        if (pos != src.size()) fail("trailing input");
        return e;
    }

    RegexPtr parse_union() {
        std::size_t start = pos;
        std::vector<RegexPtr> alts;
        alts.push_back(parse_concat());
        while (eat('|')) alts.push_back(parse_concat());
        if (alts.size() == 1) return std::move(alts.front());
        auto e = std::make_unique<Regex>();
        e->kind = Regex::Kind::Union;
        e->children = std::move(alts);
        e->text = slice(start);
        return e;
    }

    RegexPtr parse_concat() {
        std::size_t start = pos;
        std::vector<RegexPtr> parts;
        parts.push_back(parse_factor());
        for (;;) {
            skip_ws();
            if (eat('.')) {
                parts.push_back(parse_factor());
                continue;
            }
            if (pos < src.size() && (src[pos] == '(' || src[pos] == '~' || is_label_start(src[pos]))) {
                parts.push_back(parse_factor());
                continue;
            }
            break;
        }
        if (parts.size() == 1) return std::move(parts.front());
        auto e = std::make_unique<Regex>();
        e->kind = Regex::Kind::Concat;
        e->children = std::move(parts);
        e->text = slice(start);
        return e;
    }

    RegexPtr parse_factor() {
        std::size_t start = pos;
        RegexPtr e = parse_primary();
        for (;;) {
            skip_ws();
            if (eat('*')) e = wrap(Regex::Kind::Star, std::move(e), start);
            else if (eat('+')) e = wrap(Regex::Kind::Plus, std::move(e), start);
            else break;
        }
        return e;
    }

    RegexPtr wrap(Regex::Kind kind, RegexPtr inner, std::size_t start) {
        auto e = std::make_unique<Regex>();
        e->kind = kind;
        e->children.push_back(std::move(inner));
        e->text = slice(start);
        return e;
    }

    RegexPtr parse_primary() {
        skip_ws();
        if (eat('(')) {
            RegexPtr e = parse_union();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        std::size_t start = pos;
        if (pos >= src.size()) fail("expected a symbol literal");
        // A symbol literal runs up to and including its closing ']'.
        std::size_t close = src.find(']', pos);
        if (close == std::string::npos) fail("unterminated symbol literal");
        std::string lit = src.substr(start, close - start + 1);
        pos = close + 1;
        auto e = std::make_unique<Regex>();
        e->kind = Regex::Kind::Symbol;
        e->symbol = parse_symbol(lit, sigma);
        e->text = lit;
        return e;
    }

    static bool is_label_start(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) &&
               std::string("[]|(),;~{}:#*+.").find(c) == std::string::npos;
    }

    std::string slice(std::size_t start) {
        std::string s = src.substr(start, pos - start);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    }
};

} // namespace

RegexPtr parse_regex(const std::string& text, const RankedAlphabet& sigma) {
    RegexParser p{text, sigma};
    return p.parse();
}

namespace {

struct Builder {
    Automaton aut;
    unsigned next_state = 0;

    std::string fresh(unsigned rank) {
        std::string name = "r" + std::to_string(next_state++);
        aut.states.push_back(State{name, rank});
        return name;
    }
    void link(const std::string& from, TypedSymbol sym, const std::string& to) {
        aut.transitions.push_back(Transition{from, std::move(sym), to});
    }

    struct Frag { std::string in, out; };

    Frag build(const Regex& e) {
        auto [m, n] = regex_type(e);
        switch (e.kind) {
        case Regex::Kind::Symbol: {
            Frag f{fresh(m), fresh(n)};
            link(f.in, e.symbol, f.out);
            return f;
        }
        case Regex::Kind::Concat: {
            Frag whole = build(*e.children.front());
            for (std::size_t i = 1; i < e.children.size(); ++i) {
                Frag next = build(*e.children[i]);
                unsigned k = regex_type(*e.children[i]).first;
                link(whole.out, identity_blank(k), next.in);
                whole.out = next.out;
            }
            return whole;
        }
        case Regex::Kind::Union: {
            Frag f{fresh(m), fresh(n)};
            for (const auto& c : e.children) {
                Frag inner = build(*c);
                link(f.in, identity_blank(m), inner.in);
                link(inner.out, identity_blank(n), f.out);
            }
            return f;
        }
        case Regex::Kind::Star:
        case Regex::Kind::Plus: {
            Frag inner = build(*e.children.front());
            Frag f{fresh(m), fresh(n)};
            if (e.kind == Regex::Kind::Star) link(f.in, identity_blank(m), f.out);
            link(f.in, identity_blank(m), inner.in);
            link(inner.out, identity_blank(n), f.out);
            link(inner.out, identity_blank(n), inner.in);
            return f;
        }
        }
        throw std::logic_error("unreachable");
    }
};

} // namespace

Automaton from_regex(const Regex& e, const RankedAlphabet& sigma, const std::string& name) {
    regex_type(e); // surface type errors first
    Builder b;
    b.aut.name = name;
    b.aut.alphabet = sigma;
    auto frag = b.build(e);
    b.aut.initial = frag.in;
    b.aut.finals = {frag.out};
    require_valid(b.aut);
    return std::move(b.aut);
}

} // namespace grata
