#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopauto/builtins.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/invhull.hpp"
#include "loopauto/io.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/transduce.hpp"
#include "loopauto/verify.hpp"
#include "loopauto/words.hpp"

namespace loopauto::cli {

using builtins::Source;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

namespace detail {

inline std::string dot_title(const std::string& name) {
    std::string out;
    for (char c : name)
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "g_" + out;
    return out;
}

inline const words::Alphabet& alphabet_of(const Source& s) {
    return s.kind == Source::Kind::Oracle ? s.oracle->alphabet() : s.gens.alphabet;
}

inline transduce::CsTransducerSpec transducer_spec(const Source& s) {
    if (!s.rees)
        throw Unsupported("transducer: the source is not presented as a Rees matrix semigroup");
    return transduce::make_cs_spec(*s.rees, builtins::default_table_generators(s.rees->group),
                                   s.gens.alphabet, s.rees_gens);
}

inline void emit(const std::string& text, const std::optional<std::string>& path,
                 std::ostream& out) {
    if (path) {
        io::write_text_file(*path, text);
        out << "wrote " << *path << "\n";
    } else {
        out << text;
    }
}

}  // namespace detail

struct BuildOptions {
    std::string spec;
    std::size_t radius = 3;
    std::optional<std::string> dot_prefix;
};

inline int cmd_build(const BuildOptions& opt, std::ostream& out) {
    Source s = io::load_source(opt.spec);
    std::string title = detail::dot_title(s.name);
    auto write = [&](const std::string& suffix, const std::string& text) {
        std::string path = *opt.dot_prefix + suffix;
        io::write_text_file(path, text);
        out << "wrote " << path << "\n";
    };

    if (s.kind == Source::Kind::Oracle) {
        loopcore::Ball b = loopcore::loop_ball(*s.oracle, opt.radius);
        std::size_t boundary = 0;
        for (char c : b.boundary) boundary += c != 0;
        out << s.name << ": oracle monoid, ball of radius " << opt.radius << "\n";
        out << "ball: " << b.vertex.size() << " vertices, " << boundary << " on the boundary\n";
        if (opt.dot_prefix) write("-ball.dot", io::dot_ball(b, title));
        return kTrue;
    }

    auto [mt, mg] = loopcore::monoid_form(s.table, s.gens);
    loopcore::CayleyGraph c = loopcore::cayley_graph(mt, mg);
    loopcore::LoopAutomaton la = loopcore::loop_automaton(s.table, s.gens);
    automata::Dfa d = automata::minimize(loopcore::loop_problem_dfa(s.table, s.gens));
    out << s.name << ": " << (s.table.identity ? "monoid" : "semigroup") << " with "
        << s.table.size() << " elements, " << s.gens.alphabet.size() << " generators\n";
    out << "loop automaton: " << la.nfa.states << " states, " << la.nfa.edges.size()
        << " edges\n";
    out << "minimized loop problem dfa: " << d.states << " states\n";
    if (opt.dot_prefix) {
        write("-cayley.dot", io::dot_cayley(c, title));
        write("-loop.dot", io::dot_loop_automaton(la, title));
        write("-dfa.dot", io::dot_dfa(d, la.hat, title, la.base.size()));
        write("-dfa.json", io::dump_stable(io::dfa_to_json(d, la.hat)));
    }
    return kTrue;
}

struct DecideOptions {
    std::string spec;
    std::string mode;
    std::vector<std::string> words;
};

inline int cmd_decide(const DecideOptions& opt, std::ostream& out) {
    Source s = io::load_source(opt.spec);
    const words::Alphabet& a = detail::alphabet_of(s);
    bool result = false;
    if (opt.mode == "member") {
        if (opt.words.size() != 1)
            throw ValidationError("decide member: exactly one word expected");
        words::InvolutiveWord w = words::parse_word(a, opt.words[0]);
        result = s.kind == Source::Kind::Oracle ? loopcore::loop_membership(*s.oracle, w)
                                                : loopcore::loop_membership(s.table, s.gens, w);
    } else {
        if (opt.words.size() != 2)
            throw ValidationError("decide equal: exactly two words expected");
        words::PositiveWord u = words::parse_positive_word(a, opt.words[0]);
        words::PositiveWord v = words::parse_positive_word(a, opt.words[1]);
        result = s.kind == Source::Kind::Oracle ? loopcore::words_equal(*s.oracle, u, v)
                                                : loopcore::words_equal(s.table, s.gens, u, v);
    }
    out << (result ? "true" : "false") << "\n";
    return result ? kTrue : kFalse;
}

struct VerifyOptions {
    std::string corpus;
    std::optional<std::string> suite;
    std::optional<std::string> out_path;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    std::vector<Source> corpus = io::load_corpus(opt.corpus);
    std::vector<std::string> suites =
        opt.suite ? std::vector<std::string>{*opt.suite} : verify::suite_names();
    std::vector<verify::VerificationReport> reports = verify::run_suites(suites, corpus);

    std::string text;
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& r : reports) {
        text += verify::render_report(r);
        passed += r.count(verify::Status::Pass);
        failed += r.count(verify::Status::Fail);
        skipped += r.count(verify::Status::Skip);
    }
    text += "total: " + std::to_string(passed) + " passed, " + std::to_string(failed) +
            " failed, " + std::to_string(skipped) + " skipped\n";
    out << text;
    if (opt.out_path) {
        io::write_text_file(*opt.out_path, text);
        out << "wrote " << *opt.out_path << "\n";
    }
    return failed == 0 ? kTrue : kFalse;
}

struct ExportOptions {
    std::string spec;
    std::string what;
    std::string format = "dot";
    std::size_t radius = 3;
    std::optional<std::string> out_path;
};

inline int cmd_export(const ExportOptions& opt, std::ostream& out) {
    Source s = io::load_source(opt.spec);
    std::string title = detail::dot_title(s.name);
    const bool finite = s.kind != Source::Kind::Oracle;
    const bool dot = opt.format == "dot";
    std::string text;

    if (opt.what == "cayley") {
        if (!finite) throw Unsupported("cayley: the monoid is infinite; export the loop ball");
        auto [mt, mg] = loopcore::monoid_form(s.table, s.gens);
        text = dot ? io::dot_cayley(loopcore::cayley_graph(mt, mg), title)
                   : io::dump_stable(io::table_to_json(s.table, s.gens));
    } else if (opt.what == "loop") {
        if (finite) {
            loopcore::LoopAutomaton la = loopcore::loop_automaton(s.table, s.gens);
            text = dot ? io::dot_loop_automaton(la, title)
                       : io::dump_stable(io::nfa_to_json(la.nfa, la.hat));
        } else {
            loopcore::Ball b = loopcore::loop_ball(*s.oracle, opt.radius);
            text = dot ? io::dot_ball(b, title) : io::dump_stable(io::nfa_to_json(b.nfa, b.hat));
        }
    } else if (opt.what == "dfa") {
        if (!finite)
            throw Unsupported("dfa: the loop problem of an infinite monoid is not regular");
        automata::Dfa d = automata::minimize(loopcore::loop_problem_dfa(s.table, s.gens));
        words::Alphabet hat = words::hat_alphabet(s.gens.alphabet);
        text = dot ? io::dot_dfa(d, hat, title, s.gens.alphabet.size())
                   : io::dump_stable(io::dfa_to_json(d, hat));
    } else if (opt.what == "hull") {
        if (!finite) throw Unsupported("hull: the monoid is infinite");
        if (dot) throw Unsupported("hull: only --format table is available");
        invhull::InverseHullTable h = invhull::inverse_hull_finite(s.table, s.gens);
        auto carrier = loopcore::monoid_form(s.table, s.gens).first.elements;
        text = io::dump_stable(io::hull_to_json(h, carrier));
    } else {
        transduce::CsTransducerSpec spec = detail::transducer_spec(s);
        transduce::Transducer t = transduce::cs_transducer(spec);
        words::Alphabet hat = words::hat_alphabet(s.gens.alphabet);
        text = dot ? io::dot_transducer(t, spec.sigma_g.alphabet, hat, title)
                   : io::dump_stable(io::transducer_to_json(t, spec.sigma_g.alphabet, hat));
    }
    detail::emit(text, opt.out_path, out);
    return kTrue;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"loop problems of finitely generated monoids and semigroups"};
    app.name("loopauto");
    app.require_subcommand(1);

    BuildOptions build_opt;
    CLI::App* build = app.add_subcommand(
        "build", "emit the Cayley graph, loop automaton or ball, and minimized dfa");
    build->add_option("spec", build_opt.spec, "table or Rees json file, or a builtin name")
        ->required();
    build->add_option("--radius", build_opt.radius, "ball radius for infinite monoids");
    build->add_option("--dot", build_opt.dot_prefix, "path prefix for the emitted artifacts");

    DecideOptions decide_opt;
    CLI::App* decide =
        app.add_subcommand("decide", "decide loop membership or equality of two words");
    decide->add_option("spec", decide_opt.spec, "table or Rees json file, or a builtin name")
        ->required();
    decide->add_option("mode", decide_opt.mode, "member or equal")
        ->required()
        ->check(CLI::IsMember({"member", "equal"}));
    decide->add_option("words", decide_opt.words, "one word for member, two for equal")
        ->required()
        ->expected(1, 2);

    VerifyOptions verify_opt;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run verification suites over a corpus file");
    verify_cmd->add_option("corpus", verify_opt.corpus, "corpus json file")->required();
    verify_cmd->add_option("--suite", verify_opt.suite, "suite name; all suites when omitted")
        ->check(CLI::IsMember(verify::suite_names()));
    verify_cmd->add_option("--out", verify_opt.out_path, "also write the report to a file");

    ExportOptions export_opt;
    CLI::App* export_cmd = app.add_subcommand("export", "emit one artifact in dot or table form");
    export_cmd->add_option("spec", export_opt.spec, "table or Rees json file, or a builtin name")
        ->required();
    export_cmd->add_option("--what", export_opt.what, "artifact to emit")
        ->required()
        ->check(CLI::IsMember({"cayley", "loop", "dfa", "hull", "transducer"}));
    export_cmd->add_option("--format", export_opt.format, "dot or table")
        ->check(CLI::IsMember({"dot", "table"}));
    export_cmd->add_option("--radius", export_opt.radius, "ball radius for infinite monoids");
    export_cmd->add_option("--out", export_opt.out_path, "write to a file instead of stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kTrue;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kError;
    }

    try {
        if (build->parsed()) return cmd_build(build_opt, out);
        if (decide->parsed()) return cmd_decide(decide_opt, out);
        if (verify_cmd->parsed()) return cmd_verify(verify_opt, out);
        return cmd_export(export_opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace loopauto::cli
