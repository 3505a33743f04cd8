#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "loopauto/builtins.hpp"
#include "loopauto/invhull.hpp"
#include "loopauto/io.hpp"
#include "loopauto/loopcore.hpp"

namespace {

using namespace loopauto;
using algebra::GenMode;
using io::json;

std::filesystem::path data_dir() { return LOOPAUTO_DATA_DIR; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("table files round trip") {
    auto f = io::load_table_file(data_dir() / "z2.json");
    REQUIRE(f.table.elements == std::vector<std::string>{"e", "g"});
    REQUIRE(f.table.identity == 0);
    REQUIRE((f.table.table == std::vector<std::vector<algebra::Element>>{{0, 1}, {1, 0}}));
    REQUIRE(f.generators.has_value());
    REQUIRE(f.generators->alphabet.names() == std::vector<std::string>{"a"});
    REQUIRE(f.generators->image == std::vector<algebra::Element>{1});
    REQUIRE(f.generators->mode == GenMode::Monoid);

    json serialized = io::table_to_json(f.table, f.generators);
    REQUIRE(io::dump_stable(serialized) == slurp(data_dir() / "z2.json"));
    auto again = io::table_from_json(serialized, "roundtrip");
    REQUIRE(io::table_to_json(again.table, again.generators) == serialized);

    auto s3 = io::load_table_file(data_dir() / "s3.json");
    REQUIRE(s3.table.size() == 6);
    REQUIRE(io::dump_stable(io::table_to_json(s3.table, s3.generators)) ==
            slurp(data_dir() / "s3.json"));
    auto iso = algebra::find_isomorphism(s3.table, builtins::s3_table());
    REQUIRE(iso.has_value());
    REQUIRE(s3.table.table == builtins::s3_table().table);
}

TEST_CASE("table files report positioned errors") {
    REQUIRE_THROWS_AS(io::load_table_file(data_dir() / "missing.json"), ParseError);
    REQUIRE_THROWS_AS(io::parse_json_text("{oops", "bad.json"), ParseError);
    REQUIRE_THROWS_WITH(io::parse_json_text("{oops", "bad.json"),
                        Catch::Matchers::ContainsSubstring("bad.json"));

    json j;
    j["elements"] = json::array({"e"});
    REQUIRE_THROWS_AS(io::table_from_json(j, "t"), ParseError);

    j["identity"] = "e";
    j["table"] = json::array({json::array({"x"})});
    REQUIRE_THROWS_WITH(io::table_from_json(j, "t"),
                        Catch::Matchers::ContainsSubstring("t.table[0]"));

    j["table"] = json::array({json::array({"e", "e"})});
    REQUIRE_THROWS_AS(io::table_from_json(j, "t"), ValidationError);

    j["table"] = json::array({json::array({"e"})});
    j["generators"] = json::array({"a"});
    REQUIRE_THROWS_AS(io::table_from_json(j, "t"), ParseError);

    j["generators"] = {{"a", "e"}};
    j["mode"] = "ring";
    REQUIRE_THROWS_WITH(io::table_from_json(j, "t"),
                        Catch::Matchers::ContainsSubstring("t.mode"));

    j["mode"] = "semigroup";
    auto ok = io::table_from_json(j, "t");
    REQUIRE(ok.generators->mode == GenMode::Semigroup);
}

TEST_CASE("rees files load with generator coordinates") {
    auto f = io::load_rees_file(data_dir() / "rees_z2_2x2.json");
    REQUIRE(f.spec.I == 2);
    REQUIRE(f.spec.J == 2);
    REQUIRE(f.spec.group.elements == std::vector<std::string>{"e", "g"});
    REQUIRE((f.spec.P == std::vector<std::vector<algebra::Element>>{{0, 0}, {0, 1}}));
    REQUIRE(f.letters.names() == std::vector<std::string>{"a", "b"});
    REQUIRE((f.tau == std::vector<algebra::ReesElement>{{0, 0, 1}, {1, 0, 0}}));

    auto builtin = builtins::make_builtin("rees-Z2-2x2");
    REQUIRE(algebra::rees_to_table(f.spec).table == builtin.table.table);

    auto band = io::load_rees_file(data_dir() / "band_2x2.json");
    REQUIRE(band.spec.group.size() == 1);
    REQUIRE((band.tau == std::vector<algebra::ReesElement>{{0, 0, 0}, {1, 0, 1}}));

    json bare;
    bare["group"] = io::table_to_json(builtins::trivial_monoid());
    bare["I"] = 1;
    bare["J"] = 2;
    bare["P"] = json::array({json::array({"e"}), json::array({"e"})});
    auto all = io::rees_from_json(bare, "r");
    REQUIRE(all.letters.names() == std::vector<std::string>{"y1", "y2"});
    REQUIRE(all.tau.size() == 2);

    bare["P"] = json::array({json::array({"e"})});
    REQUIRE_THROWS_AS(io::rees_from_json(bare, "r"), ValidationError);
    bare["P"] = json::array({json::array({"e"}), json::array({"q"})});
    REQUIRE_THROWS_WITH(io::rees_from_json(bare, "r"),
                        Catch::Matchers::ContainsSubstring("r.P[1]"));

    json badgen = io::parse_json_file(data_dir() / "rees_z2_2x2.json");
    badgen["generators"]["a"] = json::array({3, "e", 1});
    REQUIRE_THROWS_WITH(io::rees_from_json(badgen, "r"),
                        Catch::Matchers::ContainsSubstring("1-based"));
}

TEST_CASE("sources load from files, inline bodies, and builtin names") {
    auto fromFile = io::load_source((data_dir() / "z2.json").string());
    REQUIRE(fromFile.name == "z2");
    REQUIRE(fromFile.kind == builtins::Source::Kind::Table);
    REQUIRE(fromFile.gens.image == std::vector<algebra::Element>{1});

    auto reesFile = io::load_source((data_dir() / "rees_z2_2x2.json").string());
    REQUIRE(reesFile.kind == builtins::Source::Kind::Rees);
    REQUIRE(reesFile.table.size() == 8);
    REQUIRE(reesFile.gens.mode == GenMode::Semigroup);

    auto builtin = io::load_source("free-monoid-2");
    REQUIRE(builtin.kind == builtins::Source::Kind::Oracle);
    REQUIRE_THROWS_AS(io::load_source("no-such-family"), ValidationError);

    auto corpus = io::load_corpus(data_dir() / "corpus.json");
    REQUIRE(corpus.size() == 14);
    REQUIRE(corpus.front().name == "trivial");
    REQUIRE(corpus.back().name == "z2-inline");
    REQUIRE(corpus.back().kind == builtins::Source::Kind::Table);
    REQUIRE(corpus.back().gens.alphabet.names() == std::vector<std::string>{"a"});

    auto noGens = io::table_from_json(io::table_to_json(builtins::t2_table()), "t2");
    auto t2src = io::source_from_table_file("t2", noGens);
    REQUIRE(t2src.gens.alphabet.names() == builtins::t2_table().elements);
    REQUIRE(t2src.gens.mode == GenMode::Monoid);
    REQUIRE(algebra::is_surjective(t2src.table, t2src.gens));
}

TEST_CASE("automaton serialization is canonical") {
    auto z2 = builtins::make_builtin("Z2");
    automata::Dfa d = loopcore::loop_problem_dfa(z2.table, z2.gens);
    words::Alphabet hat = words::hat_alphabet(z2.gens.alphabet);

    json dj = io::dfa_to_json(d, hat);
    REQUIRE(dj["kind"] == "dfa");
    REQUIRE(dj["states"] == 2);
    REQUIRE(dj["start"] == 0);
    REQUIRE(dj["accepting"] == json::array({0}));
    REQUIRE(dj["symbols"] == json::array({"a", "a'"}));
    REQUIRE((dj["delta"] == json::array({json::array({1, 1}), json::array({0, 0})})));

    automata::Nfa n;
    n.symbols = 2;
    n.states = 2;
    n.start = 0;
    n.accepting = {0, 1};
    n.edges = {{1, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    json nj = io::nfa_to_json(n, words::Alphabet({"x", "y"}));
    REQUIRE((nj["edges"] == json::array({json::array({0, "x", 0}), json::array({0, "x", 1}),
                                         json::array({1, "y", 0})})));

    automata::Dfa partial = automata::empty_language_dfa(1);
    json pj = io::dfa_to_json(partial, words::Alphabet({"x"}));
    REQUIRE((pj["delta"] == json::array({json::array({nullptr})})));

    REQUIRE_THROWS_AS(io::dfa_to_json(d, words::Alphabet({"a"})), AlphabetMismatch);
}

TEST_CASE("dot exports are stable and mark structure") {
    auto z2 = builtins::make_builtin("Z2");
    loopcore::LoopAutomaton la = loopcore::loop_automaton(z2.table, z2.gens);
    std::string dot = io::dot_loop_automaton(la, "z2");
    std::string expected =
        "digraph z2 {\n"
        "  rankdir=LR;\n"
        "  node [shape=circle];\n"
        "  __start [shape=point];\n"
        "  0 [label=\"0\", shape=doublecircle];\n"
        "  1 [label=\"1\"];\n"
        "  0 -> 1 [label=\"a\"];\n"
        "  0 -> 1 [label=\"a'\", style=dashed];\n"
        "  1 -> 0 [label=\"a\"];\n"
        "  1 -> 0 [label=\"a'\", style=dashed];\n"
        "  __start -> 0;\n"
        "}\n";
    REQUIRE(dot == expected);
    REQUIRE(dot == io::dot_loop_automaton(la, "z2"));

    algebra::FreeMonoidOracle free1(builtins::letters(1));
    loopcore::Ball ball = loopcore::loop_ball(free1, 1);
    std::string bdot = io::dot_ball(ball, "ball");
    REQUIRE(bdot ==
            "digraph ball {\n"
            "  rankdir=LR;\n"
            "  node [shape=circle];\n"
            "  __start [shape=point];\n"
            "  0 [label=\"ε\", shape=doublecircle];\n"
            "  1 [label=\"a\", style=dotted];\n"
            "  0 -> 1 [label=\"a\"];\n"
            "  1 -> 0 [label=\"a'\", style=dashed];\n"
            "  __start -> 0;\n"
            "}\n");

    loopcore::CayleyGraph cg = loopcore::cayley_graph(z2.table, z2.gens);
    std::string cdot = io::dot_cayley(cg, "cayley");
    REQUIRE(cdot.find("style=dashed") == std::string::npos);
    REQUIRE(cdot.find("0 [label=\"0\", shape=doublecircle];") != std::string::npos);

    auto band = io::load_rees_file(data_dir() / "band_2x2.json");
    auto spec = transduce::make_cs_spec(
        band.spec, algebra::GeneratorMap{builtins::letters(1), {0}, GenMode::Monoid},
        band.letters, band.tau);
    transduce::Transducer t = transduce::cs_transducer(spec);
    std::string tdot = io::dot_transducer(t, spec.sigma_g.alphabet,
                                          words::hat_alphabet(band.letters), "cs");
    REQUIRE(tdot.find(" / ") != std::string::npos);
    REQUIRE(tdot.find("[label=\"ε / a\"];") != std::string::npos);
    REQUIRE(tdot == io::dot_transducer(t, spec.sigma_g.alphabet,
                                       words::hat_alphabet(band.letters), "cs"));
}

TEST_CASE("hull export carries partial map descriptions") {
    auto z2 = io::load_table_file(data_dir() / "z2.json");
    auto hull = invhull::inverse_hull_finite(z2.table, *z2.generators);
    json j = io::hull_to_json(hull, z2.table.elements);
    REQUIRE(j["elements"] == json::array({"ε", "a"}));
    REQUIRE(j["identity"] == "ε");
    REQUIRE((j["descriptions"] ==
             json::array({"{e->e, g->g}", "{e->g, g->e}"})));
    auto back = io::table_from_json(j, "hull");
    REQUIRE(back.table.size() == 2);
}
