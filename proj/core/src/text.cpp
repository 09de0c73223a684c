#include "grata/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace grata {

namespace {

struct Token {
    std::string text;
    int line = 0, col = 0;
    bool eof = false;
};

// Splits on whitespace and the structural characters { } ( ) ; : plus the
// arrow ->. Symbol literals like a[1,3|1,2] survive as single tokens because
// none of their characters are structural here.
struct Lexer {
    std::string src;
    std::size_t pos = 0;
    int line = 1, col = 1;
    Token lookahead;
    bool has_lookahead = false;

    explicit Lexer(std::string s) : src(std::move(s)) {}

    void advance(char c) {
        if (c == '\n') { ++line; col = 1; }
        else ++col;
    }

    void skip_space_and_comments() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') { advance(src[pos]); ++pos; }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(c);
                ++pos;
            } else {
                break;
            }
        }
    }

    static bool structural(char c) { return std::string("{}();:").find(c) != std::string::npos; }

    Token lex() {
        skip_space_and_comments();
        Token t;
        t.line = line;
        t.col = col;
        if (pos >= src.size()) {
            t.eof = true;
            return t;
        }
        char c = src[pos];
        if (structural(c)) {
            t.text = std::string(1, c);
            advance(c);
            ++pos;
            return t;
        }
        if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
            t.text = "->";
            advance('-');
            advance('>');
            pos += 2;
            return t;
        }
        while (pos < src.size()) {
            char d = src[pos];
            if (std::isspace(static_cast<unsigned char>(d)) || structural(d) || d == '#') break;
            if (d == '-' && pos + 1 < src.size() && src[pos + 1] == '>') break;
            t.text += d;
            advance(d);
            ++pos;
        }
        return t;
    }

    Token peek() {
        if (!has_lookahead) {
            lookahead = lex();
            has_lookahead = true;
        }
        return lookahead;
    }

    Token next() {
        Token t = peek();
        has_lookahead = false;
        return t;
    }

    Token expect(const std::string& what) {
        Token t = next();
        if (t.eof) throw ParseError("expected " + what + ", got end of input", t.line, t.col);
        return t;
    }

    void expect_exact(const std::string& text) {
        Token t = expect("'" + text + "'");
        if (t.text != text)
            throw ParseError("expected '" + text + "', got '" + t.text + "'", t.line, t.col);
    }

    /// Raw slice up to an unconsumed `;`. Callers must not hold a lookahead
    /// token (its source characters would be lost).
    std::string raw_until_semicolon(int* out_line = nullptr, int* out_col = nullptr) {
        if (has_lookahead)
            throw ParseError("internal: raw read with pending lookahead", line, col);
        std::string out;
        skip_space_and_comments();
        int start_line = line, start_col = col;
        if (out_line) *out_line = start_line;
        if (out_col) *out_col = start_col;
        while (pos < src.size() && src[pos] != ';') {
            char c = src[pos];
            if (c == '#') {
                skip_space_and_comments();
                continue;
            }
            out += c;
            advance(c);
            ++pos;
        }
        if (pos >= src.size())
            throw ParseError("missing ';'", start_line, start_col);
        advance(';');
        ++pos; // consume ';'
        return out;
    }
};

unsigned parse_rank(Lexer& lx) {
    Token t = lx.expect("a rank");
    for (char c : t.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected a rank, got '" + t.text + "'", t.line, t.col);
    return static_cast<unsigned>(std::stoul(t.text));
}

RankedAlphabet parse_alphabet_block(Lexer& lx) {
    lx.expect_exact("alphabet");
    lx.expect_exact("{");
    RankedAlphabet sigma;
    for (;;) {
        Token t = lx.expect("a label declaration or '}'");
        if (t.text == "}") break;
        lx.expect_exact(":");
        unsigned rank = parse_rank(lx);
        try {
            sigma.add(t.text, rank);
        } catch (const std::exception& ex) {
            throw ParseError(ex.what(), t.line, t.col);
        }
    }
    return sigma;
}

} // namespace

GraphDraft parse_graph_draft(const std::string& text) {
    Lexer lx(text);
    lx.expect_exact("graph");
    GraphDraft d;
    Token name = lx.expect("a graph name");
    d.name = name.text;
    lx.expect_exact("{");
    for (;;) {
        Token t = lx.expect("a graph item or '}'");
        if (t.text == "}") break;
        if (t.text == "nodes" || t.text == "front" || t.text == "rear") {
            std::vector<std::string>* target = t.text == "nodes" ? &d.nodes
                                               : t.text == "front" ? &d.front
                                                                   : &d.rear;
            for (;;) {
                Token u = lx.expect("a node id or ';'");
                if (u.text == ";") break;
                target->push_back(u.text);
            }
        } else if (t.text == "edge") {
            GraphDraft::DraftEdge e;
            Token lab = lx.expect("an edge label");
            e.label = lab.text;
            lx.expect_exact("(");
            for (;;) {
                Token u = lx.expect("a node id or ')'");
                if (u.text == ")") break;
                e.att.push_back(u.text);
            }
            lx.expect_exact(";");
            d.edges.push_back(std::move(e));
        } else {
            throw ParseError("unexpected '" + t.text + "' in graph body", t.line, t.col);
        }
    }
    Token rest = lx.peek();
    if (!rest.eof)
        throw ParseError("trailing content after graph block: '" + rest.text + "'", rest.line,
                         rest.col);
    return d;
}

Graph parse_graph(const std::string& text, const RankedAlphabet* sigma) {
    return build_graph(parse_graph_draft(text), sigma);
}

std::string serialize_graph(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << (name.empty() ? "g" : name) << " {\n";
    out << "  nodes";
    for (const auto& n : g.node_names()) out << " " << n;
    out << " ;\n  front";
    for (NodeId v : g.front()) out << " " << g.node_name(v);
    out << " ;\n  rear";
    for (NodeId v : g.rear()) out << " " << g.node_name(v);
    out << " ;\n";
    for (const Edge& e : g.edges()) {
        out << "  edge " << e.label << " (";
        for (NodeId v : e.att) out << " " << g.node_name(v);
        out << " ) ;\n";
    }
    out << "}\n";
    return out.str();
}

Automaton parse_automaton(const std::string& text) {
    Lexer lx(text);
    Automaton a;
    a.alphabet = parse_alphabet_block(lx);
    lx.expect_exact("automaton");
    Token name = lx.expect("an automaton name");
    a.name = name.text;
    lx.expect_exact("{");
    bool have_init = false;
    for (;;) {
        Token t = lx.expect("a state declaration, a transition, or '}'");
        if (t.text == "}") break;
        if (t.text == "init" || t.text == "state" || t.text == "final") {
            Token sname = lx.expect("a state name");
            lx.expect_exact(":");
            unsigned rank = parse_rank(lx);
            lx.expect_exact(";");
            a.states.push_back(State{sname.text, rank});
            if (t.text == "init") {
                if (have_init)
                    throw ParseError("second 'init' state '" + sname.text + "'", sname.line,
                                     sname.col);
                a.initial = sname.text;
                have_init = true;
            }
            if (t.text == "final") a.finals.push_back(sname.text);
        } else {
            // transition: from -> to : symbol ;
            Token arrow = lx.expect("'->'");
            if (arrow.text != "->")
                throw ParseError("expected '->' after '" + t.text + "'", arrow.line, arrow.col);
            Token to = lx.expect("a target state");
            Token colon = lx.expect("':'");
            if (colon.text != ":")
                throw ParseError("expected ':' before the symbol", colon.line, colon.col);
            int sym_line = 0, sym_col = 0;
            std::string literal = lx.raw_until_semicolon(&sym_line, &sym_col);
            TypedSymbol sym;
            try {
                sym = parse_symbol(literal, a.alphabet);
            } catch (const std::exception& ex) {
                throw ParseError(ex.what(), sym_line, sym_col);
            }
            a.transitions.push_back(Transition{t.text, sym, to.text});
        }
    }
    if (!have_init) {
        Token t = lx.peek();
        throw ParseError("automaton '" + a.name + "' declares no init state", t.line, t.col);
    }
    Token rest = lx.peek();
    if (!rest.eof)
        throw ParseError("trailing content after automaton block: '" + rest.text + "'", rest.line,
                         rest.col);
    return a;
}

std::string serialize_automaton(const Automaton& a, const std::vector<std::string>& comments) {
    std::ostringstream out;
    out << "alphabet {";
    for (const auto& [label, rank] : a.alphabet.entries()) out << " " << label << ":" << rank;
    out << " }\n";
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "automaton " << (a.name.empty() ? "a" : a.name) << " {\n";
    for (const State& s : a.states) {
        const char* kind = s.name == a.initial ? "init" : a.is_final(s.name) ? "final" : "state";
        out << "  " << kind << " " << s.name << ":" << s.rank << " ;\n";
    }
    for (const Transition& t : a.transitions)
        out << "  " << t.from << " -> " << t.to << " : " << t.symbol.to_string() << " ;\n";
    out << "}\n";
    return out.str();
}

RegexFile parse_regex_file(const std::string& text) {
    Lexer lx(text);
    RegexFile file;
    file.alphabet = parse_alphabet_block(lx);
    lx.expect_exact("regex");
    Token name = lx.expect("a regex name");
    file.name = name.text;
    lx.expect_exact("{");
    int expr_line = 0, expr_col = 0;
    std::string expr = lx.raw_until_semicolon(&expr_line, &expr_col);
    try {
        file.expr = parse_regex(expr, file.alphabet);
    } catch (const std::exception& ex) {
        throw ParseError(ex.what(), expr_line, expr_col);
    }
    lx.expect_exact("}");
    Token rest = lx.peek();
    if (!rest.eof)
        throw ParseError("trailing content after regex block: '" + rest.text + "'", rest.line,
                         rest.col);
    return file;
}

std::string sniff_format(const std::string& text) {
    Lexer lx(text);
    Token t = lx.peek();
    if (t.text == "graph") return "graph";
    if (t.text == "regex") return "regex";
    if (t.text == "alphabet") {
        lx.next();
        lx.expect_exact("{");
        for (;;) {
            Token u = lx.expect("'}'");
            if (u.text == "}") break;
        }
        Token u = lx.peek();
        if (u.text == "regex") return "regex";
        return "automaton";
    }
    return "automaton";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

} // namespace grata
