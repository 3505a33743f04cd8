#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/builtins.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/invhull.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/transduce.hpp"
#include "loopauto/words.hpp"

namespace loopauto::io {

using json = nlohmann::json;

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using automata::Dfa;
using automata::Nfa;
using words::Alphabet;
using words::Letter;
using words::SymbolWord;

namespace detail {

inline const json& expect_key(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing key '" + std::string(key) + "'");
    return *it;
}

inline std::string expect_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

inline std::size_t expect_uint(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline const json& expect_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    return j;
}

template <typename Fn>
auto with_context(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline std::string render_symbols(const Alphabet& a, const SymbolWord& w) {
    if (w.empty()) return "ε";
    bool spaced = false;
    for (const auto& n : a.names())
        if (n.size() > 1) spaced = true;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (spaced && i > 0) out += ' ';
        out += a.name(w[i]);
    }
    return out;
}

}  // namespace detail

inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline json parse_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path.string());
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ValidationError(path.string() + ": cannot open file for writing");
    out << content;
}

// --- table files ---------------------------------------------------------------

struct TableFile {
    FiniteSemigroupTable table;
    std::optional<GeneratorMap> generators;
};

inline json table_to_json(const FiniteSemigroupTable& t,
                          const std::optional<GeneratorMap>& g = std::nullopt) {
    json j;
    j["elements"] = t.elements;
    j["identity"] = t.identity ? json(t.elements[*t.identity]) : json(nullptr);
    json rows = json::array();
    for (const auto& row : t.table) {
        json r = json::array();
        for (Element m : row) r.push_back(t.elements[m]);
        rows.push_back(std::move(r));
    }
    j["table"] = rows;
    if (g) {
        json gens = json::object();
        for (Letter x = 0; x < g->alphabet.size(); ++x)
            gens[g->alphabet.name(x)] = t.elements[g->image[x]];
        j["generators"] = gens;
        j["mode"] = g->mode == GenMode::Monoid ? "monoid" : "semigroup";
    }
    return j;
}

inline TableFile table_from_json(const json& j, const std::string& where) {
    TableFile f;
    for (const auto& e : detail::expect_array(detail::expect_key(j, "elements", where),
                                              where + ".elements"))
        f.table.elements.push_back(detail::expect_string(e, where + ".elements"));

    std::map<std::string, Element> index;
    for (Element i = 0; i < f.table.elements.size(); ++i) index[f.table.elements[i]] = i;
    auto lookup = [&](const json& v, const std::string& at) {
        auto it = index.find(detail::expect_string(v, at));
        if (it == index.end())
            throw ParseError(at + ": unknown element '" + v.get<std::string>() + "'");
        return it->second;
    };

    const json& id = detail::expect_key(j, "identity", where);
    if (!id.is_null()) f.table.identity = lookup(id, where + ".identity");

    std::size_t r = 0;
    for (const auto& row :
         detail::expect_array(detail::expect_key(j, "table", where), where + ".table")) {
        std::string at = where + ".table[" + std::to_string(r++) + "]";
        std::vector<Element> out;
        for (const auto& cell : detail::expect_array(row, at)) out.push_back(lookup(cell, at));
        f.table.table.push_back(std::move(out));
    }
    detail::with_context(where, [&] { algebra::validate(f.table); });

    if (j.contains("generators")) {
        const json& gens = j.at("generators");
        if (!gens.is_object()) throw ParseError(where + ".generators: expected an object");
        std::vector<std::string> letters;
        std::vector<Element> image;
        for (const auto& [name, value] : gens.items()) {
            letters.push_back(name);
            image.push_back(lookup(value, where + ".generators." + name));
        }
        if (letters.empty()) throw ParseError(where + ".generators: at least one letter required");
        GenMode mode = f.table.identity ? GenMode::Monoid : GenMode::Semigroup;
        if (j.contains("mode")) {
            std::string m = detail::expect_string(j.at("mode"), where + ".mode");
            if (m == "monoid")
                mode = GenMode::Monoid;
            else if (m == "semigroup")
                mode = GenMode::Semigroup;
            else
                throw ParseError(where + ".mode: expected \"monoid\" or \"semigroup\"");
        }
        detail::with_context(where + ".generators", [&] {
            f.generators = GeneratorMap{Alphabet(std::move(letters)), std::move(image), mode};
            algebra::validate(f.table, *f.generators);
        });
    }
    return f;
}

inline TableFile load_table_file(const std::filesystem::path& path) {
    return table_from_json(parse_json_file(path), path.string());
}

// --- Rees files ------------------------------------------------------------------

struct ReesFile {
    algebra::ReesSpec spec;
    Alphabet letters;
    std::vector<algebra::ReesElement> tau;
};

inline ReesFile rees_from_json(const json& j, const std::string& where) {
    ReesFile f;
    f.spec.group = table_from_json(detail::expect_key(j, "group", where), where + ".group").table;
    f.spec.I = detail::expect_uint(detail::expect_key(j, "I", where), where + ".I");
    f.spec.J = detail::expect_uint(detail::expect_key(j, "J", where), where + ".J");

    auto group_lookup = [&](const json& v, const std::string& at) {
        auto found = f.spec.group.find(detail::expect_string(v, at));
        if (!found) throw ParseError(at + ": unknown group element '" + v.get<std::string>() + "'");
        return *found;
    };
    std::size_t r = 0;
    for (const auto& row : detail::expect_array(detail::expect_key(j, "P", where), where + ".P")) {
        std::string at = where + ".P[" + std::to_string(r++) + "]";
        std::vector<Element> out;
        for (const auto& cell : detail::expect_array(row, at))
            out.push_back(group_lookup(cell, at));
        f.spec.P.push_back(std::move(out));
    }
    detail::with_context(where, [&] { algebra::validate(f.spec); });

    if (j.contains("generators")) {
        const json& gens = j.at("generators");
        if (!gens.is_object()) throw ParseError(where + ".generators: expected an object");
        std::vector<std::string> letters;
        for (const auto& [name, value] : gens.items()) {
            std::string at = where + ".generators." + name;
            const json& triple = detail::expect_array(value, at);
            if (triple.size() != 3) throw ParseError(at + ": expected [i, \"g\", j]");
            std::size_t i = detail::expect_uint(triple[0], at + "[0]");
            std::size_t jj = detail::expect_uint(triple[2], at + "[2]");
            if (i < 1 || i > f.spec.I || jj < 1 || jj > f.spec.J)
                throw ParseError(at + ": index out of range (indices are 1-based)");
            letters.push_back(name);
            f.tau.push_back({i - 1, group_lookup(triple[1], at + "[1]"), jj - 1});
        }
        if (letters.empty()) throw ParseError(where + ".generators: at least one letter required");
        f.letters = detail::with_context(where + ".generators",
                                         [&] { return Alphabet(std::move(letters)); });
    } else {
        const std::size_t n = f.spec.I * f.spec.group.size() * f.spec.J;
        std::vector<std::string> letters;
        for (std::size_t idx = 0; idx < n; ++idx) {
            letters.push_back("y" + std::to_string(idx + 1));
            f.tau.push_back(algebra::rees_element_at(f.spec, idx));
        }
        f.letters = Alphabet(std::move(letters));
    }
    return f;
}

inline ReesFile load_rees_file(const std::filesystem::path& path) {
    return rees_from_json(parse_json_file(path), path.string());
}

// --- inverse hull export ----------------------------------------------------------

inline json hull_to_json(const invhull::InverseHullTable& h,
                         const std::vector<std::string>& carrier_names) {
    json j = table_to_json(h.table);
    json desc = json::array();
    for (const auto& f : h.elements)
        desc.push_back(invhull::partial_map_description(f, carrier_names));
    j["descriptions"] = desc;
    return j;
}

// --- automaton files ---------------------------------------------------------------

inline json nfa_to_json(const Nfa& a, const Alphabet& symbols) {
    automata::validate(a);
    if (symbols.size() != a.symbols)
        throw AlphabetMismatch("automaton export: symbol name count mismatch");
    json j;
    j["kind"] = "nfa";
    j["symbols"] = symbols.names();
    j["states"] = a.states;
    j["start"] = a.start;
    json acc = json::array();
    for (automata::State q = 0; q < a.states; ++q)
        if (a.accepting[q]) acc.push_back(q);
    j["accepting"] = acc;
    auto edges = a.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.from, x.label, x.to) < std::tie(y.from, y.label, y.to);
    });
    json out = json::array();
    for (const auto& e : edges) out.push_back(json::array({e.from, symbols.name(e.label), e.to}));
    j["edges"] = out;
    return j;
}

inline json dfa_to_json(const Dfa& d, const Alphabet& symbols) {
    automata::validate(d);
    if (symbols.size() != d.symbols)
        throw AlphabetMismatch("automaton export: symbol name count mismatch");
    json j;
    j["kind"] = "dfa";
    j["symbols"] = symbols.names();
    j["states"] = d.states;
    j["start"] = d.start;
    json acc = json::array();
    for (automata::State q = 0; q < d.states; ++q)
        if (d.accepting[q]) acc.push_back(q);
    j["accepting"] = acc;
    json delta = json::array();
    for (automata::State q = 0; q < d.states; ++q) {
        json row = json::array();
        for (words::Symbol x = 0; x < d.symbols; ++x)
            row.push_back(d.delta[q][x] == automata::kNoState ? json(nullptr)
                                                              : json(d.delta[q][x]));
        delta.push_back(std::move(row));
    }
    j["delta"] = delta;
    return j;
}

inline json transducer_to_json(const transduce::Transducer& t, const Alphabet& in_names,
                               const Alphabet& out_names) {
    transduce::validate(t);
    if (in_names.size() != t.in_symbols || out_names.size() != t.out_symbols)
        throw AlphabetMismatch("transducer export: symbol name count mismatch");
    json j;
    j["kind"] = "transducer";
    j["in_symbols"] = in_names.names();
    j["out_symbols"] = out_names.names();
    j["states"] = t.states;
    j["start"] = t.start;
    json acc = json::array();
    for (automata::State q = 0; q < t.states; ++q)
        if (t.accepting[q]) acc.push_back(q);
    j["accepting"] = acc;
    auto edges = t.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.from, a.in, a.out, a.to) < std::tie(b.from, b.in, b.out, b.to);
    });
    json out = json::array();
    for (const auto& e : edges) {
        json in_word = json::array(), out_word = json::array();
        for (auto s : e.in) in_word.push_back(in_names.name(s));
        for (auto s : e.out) out_word.push_back(out_names.name(s));
        out.push_back(json::array({e.from, in_word, out_word, e.to}));
    }
    j["edges"] = out;
    return j;
}

// --- DOT -----------------------------------------------------------------------------

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string dot_render(const std::string& title, const std::vector<std::string>& nodes,
                              std::vector<std::string> edges) {
    std::sort(edges.begin(), edges.end());
    std::string out = "digraph " + title + " {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (const auto& n : nodes) out += "  " + n + "\n";
    for (const auto& e : edges) out += "  " + e + "\n";
    out += "}\n";
    return out;
}

inline std::string node_line(std::size_t q, const std::string& label, bool accepting,
                             bool dotted = false) {
    std::string attrs = "label=\"" + dot_escape(label) + "\"";
    if (accepting) attrs += ", shape=doublecircle";
    if (dotted) attrs += ", style=dotted";
    return std::to_string(q) + " [" + attrs + "];";
}

}  // namespace detail

// Barred symbols (label >= barred_from) render dashed; pass labels to name the
// states, otherwise they show their index.
inline std::string dot_automaton(const Nfa& a, const Alphabet& symbols, const std::string& title,
                                 std::size_t barred_from = std::size_t(-1),
                                 const std::vector<std::string>* labels = nullptr,
                                 const std::vector<char>* dotted = nullptr) {
    automata::validate(a);
    if (symbols.size() != a.symbols) throw AlphabetMismatch("dot: symbol name count mismatch");
    std::vector<std::string> nodes;
    nodes.push_back("__start [shape=point];");
    for (automata::State q = 0; q < a.states; ++q) {
        std::string label = labels ? (*labels)[q] : std::to_string(q);
        if (label.empty()) label = "ε";
        nodes.push_back(detail::node_line(q, label, a.accepting[q] != 0,
                                          dotted && (*dotted)[q] != 0));
    }
    std::vector<std::string> edges;
    edges.push_back("__start -> " + std::to_string(a.start) + ";");
    for (const auto& e : a.edges) {
        std::string line = std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
                           detail::dot_escape(symbols.name(e.label)) + "\"";
        if (e.label >= barred_from) line += ", style=dashed";
        line += "];";
        edges.push_back(std::move(line));
    }
    return detail::dot_render(title, nodes, std::move(edges));
}

inline std::string dot_dfa(const Dfa& d, const Alphabet& symbols, const std::string& title,
                           std::size_t barred_from = std::size_t(-1)) {
    return dot_automaton(automata::to_nfa(d), symbols, title, barred_from);
}

inline std::string dot_cayley(const loopcore::CayleyGraph& c, const std::string& title) {
    std::vector<std::string> nodes;
    nodes.push_back("__start [shape=point];");
    for (std::size_t q = 0; q < c.vertex.size(); ++q)
        nodes.push_back(detail::node_line(q, c.vertex[q], q == c.identity));
    std::vector<std::string> edges;
    edges.push_back("__start -> " + std::to_string(c.identity) + ";");
    for (const auto& e : c.edges)
        edges.push_back(std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
                        detail::dot_escape(c.alphabet.name(e.label)) + "\"];");
    return detail::dot_render(title, nodes, std::move(edges));
}

inline std::string dot_loop_automaton(const loopcore::LoopAutomaton& la,
                                      const std::string& title) {
    return dot_automaton(la.nfa, la.hat, title, la.base.size(), &la.vertex);
}

inline std::string dot_ball(const loopcore::Ball& b, const std::string& title) {
    return dot_automaton(b.nfa, b.hat, title, b.base.size(), &b.vertex, &b.boundary);
}

inline std::string dot_transducer(const transduce::Transducer& t, const Alphabet& in_names,
                                  const Alphabet& out_names, const std::string& title) {
    transduce::validate(t);
    if (in_names.size() != t.in_symbols || out_names.size() != t.out_symbols)
        throw AlphabetMismatch("dot: transducer symbol name count mismatch");
    std::vector<std::string> nodes;
    nodes.push_back("__start [shape=point];");
    for (automata::State q = 0; q < t.states; ++q)
        nodes.push_back(detail::node_line(q, std::to_string(q), t.accepting[q] != 0));
    std::vector<std::string> edges;
    edges.push_back("__start -> " + std::to_string(t.start) + ";");
    for (const auto& e : t.edges)
        edges.push_back(std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
                        detail::dot_escape(detail::render_symbols(in_names, e.in)) + " / " +
                        detail::dot_escape(detail::render_symbols(out_names, e.out)) + "\"];");
    return detail::dot_render(title, nodes, std::move(edges));
}

// --- sources and corpora --------------------------------------------------------------

using builtins::default_table_generators;

inline builtins::Source source_from_table_file(const std::string& name, TableFile f) {
    GeneratorMap gens = f.generators ? *f.generators : default_table_generators(f.table);
    return builtins::table_source(name, std::move(f.table), std::move(gens));
}

inline builtins::Source source_from_rees_file(const std::string& name, ReesFile f) {
    return builtins::rees_source(name, std::move(f.spec), f.letters, std::move(f.tau));
}

inline builtins::Source source_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return builtins::make_builtin(j.get<std::string>());
    if (!j.is_object()) throw ParseError(where + ": expected a name or an object");
    std::string name = detail::expect_string(detail::expect_key(j, "name", where), where + ".name");
    if (j.contains("table"))
        return source_from_table_file(name, table_from_json(j.at("table"), where + ".table"));
    if (j.contains("rees"))
        return source_from_rees_file(name, rees_from_json(j.at("rees"), where + ".rees"));
    throw ParseError(where + ": expected a 'table' or 'rees' body");
}

// A file path loads as a single-source file; anything else must be a built-in name.
inline builtins::Source load_source(const std::string& ref) {
    if (std::filesystem::exists(ref)) {
        json j = parse_json_file(ref);
        std::string name = std::filesystem::path(ref).stem().string();
        if (j.is_object() && j.contains("group"))
            return source_from_rees_file(name, rees_from_json(j, ref));
        return source_from_table_file(name, table_from_json(j, ref));
    }
    return detail::with_context(ref, [&] { return builtins::make_builtin(ref); });
}

inline std::vector<builtins::Source> load_corpus(const std::filesystem::path& path) {
    json j = parse_json_file(path);
    const json& items = detail::expect_array(
        detail::expect_key(j, "items", path.string()), path.string() + ".items");
    std::vector<builtins::Source> out;
    std::size_t i = 0;
    for (const auto& item : items)
        out.push_back(source_from_json(item, path.string() + ".items[" + std::to_string(i++) + "]"));
    if (out.empty()) throw ParseError(path.string() + ".items: corpus is empty");
    return out;
}

inline std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

}  // namespace loopauto::io
