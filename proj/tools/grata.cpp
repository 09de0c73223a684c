// Command-line front end: validate, determinize, analyze, recognize,
// decompose, compile, sample, export-dot.
//
// Exit codes: 0 ok/accept, 1 reject or failed analysis, 2 errors.

#include "grata/analysis.hpp"
#include "grata/automaton.hpp"
#include "grata/determinize.hpp"
#include "grata/dot.hpp"
#include "grata/recognizer.hpp"
#include "grata/regex.hpp"
#include "grata/symbols.hpp"
#include "grata/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using namespace grata;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

int cmd_validate(const std::string& path) {
    std::string text = read_file(path);
    std::string kind = sniff_format(text);
    if (kind == "graph") {
        GraphDraft draft = parse_graph_draft(text);
        auto violations = validate_graph(draft, nullptr);
        if (violations.empty()) {
            std::cout << "graph '" << draft.name << "': ok (" << draft.nodes.size() << " nodes, "
                      << draft.edges.size() << " edges)\n";
            return kOk;
        }
        for (const auto& v : violations) std::cerr << path << ": " << v << "\n";
        return kError;
    }
    if (kind == "regex") {
        RegexFile file = parse_regex_file(text);
        auto [m, n] = regex_type(*file.expr);
        std::cout << "regex '" << file.name << "': ok, type (" << m << "," << n << ")\n";
        return kOk;
    }
    Automaton a = parse_automaton(text);
    auto violations = validate_automaton(a);
    if (violations.empty()) {
        std::cout << "automaton '" << a.name << "': ok (" << a.states.size() << " states, "
                  << a.transitions.size() << " transitions)\n";
        return kOk;
    }
    for (const auto& v : violations) std::cerr << path << ": " << v << "\n";
    return kError;
}

int cmd_determinize(const std::string& path, const std::string& out_path, bool force_disambiguate) {
    Automaton a = parse_automaton(read_file(path));
    require_valid(a);
    if (force_disambiguate || !ambiguous_pairs(a).empty()) {
        std::size_t before = a.transitions.size();
        a = disambiguate(a);
        if (a.transitions.size() != before)
            std::cout << "disambiguated: " << a.states.size() << " states, "
                      << a.transitions.size() << " transitions\n";
    }
    PowersetResult result = powerset(a);
    std::cout << result.automaton.states.size() << " states, "
              << result.automaton.transitions.size() << " transitions\n";
    std::string serialized = serialize_automaton(result.automaton, result.state_notes);
    if (out_path.empty()) std::cout << serialized;
    else write_file(out_path, serialized);
    return kOk;
}

int cmd_analyze(const std::string& path) {
    Automaton a = parse_automaton(read_file(path));
    AnalysisReport report = analyze(a);
    std::cout << format_report(a, report);
    return report.ok() ? kOk : kReject;
}

int cmd_recognize(const std::string& aut_path, const std::vector<std::string>& graph_paths,
                  bool backtrack, bool unsafe, const std::string& trace_path,
                  const std::string& trace_json_path) {
    Automaton a = parse_automaton(read_file(aut_path));
    require_valid(a);

    auto format_trace = [&](const MoveTrace& trace) {
        std::string out;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const TraceStep& step = trace[i];
            const Transition& t = a.transitions[step.transition];
            out += "step " + std::to_string(i + 1) + ": " + t.from + " --" +
                   t.symbol.to_string() + "--> " + t.to + " edge=" + (step.edge ? *step.edge : "-") +
                   " map=[";
            for (std::size_t k = 0; k < step.node_map.size(); ++k)
                out += (k ? " " : "") + std::to_string(k + 1) + ":" + step.node_map[k];
            out += "]\n";
        }
        return out;
    };
    auto trace_json = [&](const MoveTrace& trace) {
        std::string out;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const TraceStep& step = trace[i];
            const Transition& t = a.transitions[step.transition];
            nlohmann::json j;
            j["step"] = i + 1;
            j["from"] = t.from;
            j["symbol"] = t.symbol.to_string();
            j["to"] = t.to;
            if (step.edge) j["edge"] = *step.edge;
            nlohmann::json map = nlohmann::json::object();
            for (std::size_t k = 0; k < step.node_map.size(); ++k)
                map[std::to_string(k + 1)] = step.node_map[k];
            j["map"] = map;
            out += j.dump() + "\n";
        }
        return out;
    };

    bool all_accept = true;
    for (const auto& gpath : graph_paths) {
        Graph g = parse_graph(read_file(gpath), &a.alphabet);
        Verdict verdict;
        MoveTrace trace;
        if (backtrack) {
            BacktrackResult r = recognize_backtracking(a, g);
            verdict = r.verdict;
            trace = std::move(r.trace);
        } else {
            RecognitionResult r = recognize_checked(a, g, unsafe);
            verdict = r.verdict;
            trace = std::move(r.trace);
            if (verdict == Verdict::Reject && !r.reason.empty())
                std::cerr << gpath << ": " << r.reason << "\n";
        }
        if (verdict == Verdict::ResourceLimit) {
            std::cerr << gpath << ": resource limit exceeded\n";
            return kError;
        }
        bool accepted = verdict == Verdict::Accept;
        all_accept = all_accept && accepted;
        std::cout << gpath << ": " << (accepted ? "accept" : "reject") << "\n";
        if (accepted && !trace_path.empty()) write_file(trace_path, format_trace(trace));
        if (accepted && !trace_json_path.empty()) write_file(trace_json_path, trace_json(trace));
    }
    return all_accept ? kOk : kReject;
}

int cmd_decompose(const std::string& path) {
    Graph g = parse_graph(read_file(path));
    SymbolString w = decompose(g);
    std::cout << to_string(w) << "\n";
    return kOk;
}

int cmd_compile(const std::string& path, const std::string& out_path) {
    RegexFile file = parse_regex_file(read_file(path));
    Automaton a = from_regex(*file.expr, file.alphabet, file.name);
    std::cout << a.states.size() << " states, " << a.transitions.size() << " transitions\n";
    std::string serialized = serialize_automaton(a);
    if (out_path.empty()) std::cout << serialized;
    else write_file(out_path, serialized);
    return kOk;
}

int cmd_sample(const std::string& path, unsigned max_len, bool graphs,
               const std::string& out_dir) {
    Automaton a = parse_automaton(read_file(path));
    require_valid(a);
    auto strings = enumerate_accepted(a, max_len);
    unsigned k = 0;
    for (const auto& w : strings) {
        std::cout << to_string(w) << "\n";
        if (graphs) {
            Graph g = interpret_string(w, a.alphabet);
            std::string name = a.name + "_" + std::to_string(k);
            std::string file = (out_dir.empty() ? "." : out_dir) + "/" + name + ".graph";
            write_file(file, serialize_graph(g, name));
        }
        ++k;
    }
    std::cerr << strings.size() << " strings of length <= " << max_len << "\n";
    return kOk;
}

int cmd_export_dot(const std::string& path, const std::string& out_path) {
    std::string text = read_file(path);
    std::string dot;
    if (sniff_format(text) == "graph") {
        GraphDraft draft = parse_graph_draft(text);
        dot = dot_graph(build_graph(draft, nullptr), draft.name);
    } else {
        dot = dot_automaton(parse_automaton(text));
    }
    if (out_path.empty()) std::cout << dot;
    else write_file(out_path, dot);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite automata over graph symbols: build, determinize, analyze, recognize"};
    app.require_subcommand(1);
    unsigned seed = 0;
    app.add_option("--seed", seed, "seed for randomized operations (reserved)");

    std::string in_path, out_path, trace_path, trace_json_path, out_dir;
    std::vector<std::string> graph_paths;
    bool flag_disambiguate = false, flag_backtrack = false, flag_unsafe = false,
         flag_graphs = false;
    unsigned max_len = 4;

    auto* validate = app.add_subcommand("validate", "check a graph, automaton, or regex file");
    validate->add_option("file", in_path)->required();

    auto* determinize = app.add_subcommand("determinize", "powerset construction");
    determinize->add_option("file", in_path)->required();
    determinize->add_option("-o,--output", out_path, "write the result here");
    determinize->add_flag("--disambiguate", flag_disambiguate,
                          "split ambiguous symbols even if not needed");

    auto* analyze = app.add_subcommand("analyze", "determinism, transition selection, free edge choice");
    analyze->add_option("file", in_path)->required();

    auto* recognize = app.add_subcommand("recognize", "run an automaton on graphs");
    recognize->add_option("automaton", in_path)->required();
    recognize->add_option("graphs", graph_paths, "graph files")->required();
    recognize->add_flag("--backtrack", flag_backtrack, "use the backtracking oracle");
    recognize->add_flag("--unsafe", flag_unsafe,
                        "run the greedy recognizer even if the analysis fails (advisory verdict)");
    recognize->add_option("--trace", trace_path, "write the accepting trace here");
    recognize->add_option("--trace-json", trace_json_path, "write the trace as JSON lines");

    auto* decompose = app.add_subcommand("decompose", "write a graph as atoms followed by a blank");
    decompose->add_option("file", in_path)->required();

    auto* compile = app.add_subcommand("compile", "regex file to automaton");
    compile->add_option("file", in_path)->required();
    compile->add_option("-o,--output", out_path);

    auto* sample = app.add_subcommand("sample", "enumerate accepted strings");
    sample->add_option("file", in_path)->required();
    sample->add_option("--max-len", max_len, "length bound")->required();
    sample->add_flag("--graphs", flag_graphs, "also write the denoted graphs");
    sample->add_option("--out-dir", out_dir, "directory for --graphs output");

    auto* export_dot = app.add_subcommand("export-dot", "GraphViz export");
    export_dot->add_option("file", in_path)->required();
    export_dot->add_option("-o,--output", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(in_path);
        if (*determinize) return cmd_determinize(in_path, out_path, flag_disambiguate);
        if (*analyze) return cmd_analyze(in_path);
        if (*recognize)
            return cmd_recognize(in_path, graph_paths, flag_backtrack, flag_unsafe, trace_path,
                                 trace_json_path);
        if (*decompose) return cmd_decompose(in_path);
        if (*compile) return cmd_compile(in_path, out_path);
        if (*sample) return cmd_sample(in_path, max_len, flag_graphs, out_dir);
        if (*export_dot) return cmd_export_dot(in_path, out_path);
    } catch (const grata::ParseError& ex) {
        std::cerr << in_path << ":" << ex.what() << "\n";
        return kError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kError;
    }
    return kError;
}
