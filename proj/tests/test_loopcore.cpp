#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/builtins.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/words.hpp"

namespace {

using namespace loopauto;
using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using automata::Dfa;
using words::InvolutiveWord;
using words::PositiveWord;
using words::SymbolWord;

PositiveWord pw(std::initializer_list<words::Letter> letters) { return PositiveWord(letters); }

InvolutiveWord iw(std::size_t k, const SymbolWord& symbols) { return words::from_symbols(symbols, k); }

std::vector<SymbolWord> symbol_words_up_to(std::size_t symbols, std::size_t maxlen) {
    std::vector<SymbolWord> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t s = 0; s < symbols; ++s) {
                SymbolWord w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

std::vector<PositiveWord> positive_words_up_to(std::size_t letters, std::size_t maxlen) {
    std::vector<PositiveWord> out;
    for (const auto& s : symbol_words_up_to(letters, maxlen)) out.push_back(PositiveWord(s.begin(), s.end()));
    return out;
}

// Independent path check over the two-way Cayley graph: positive letters step
// forward deterministically, barred letters branch over preimages.
bool path_exists(const FiniteSemigroupTable& t, const GeneratorMap& g, Element from, Element to,
                 const InvolutiveWord& w, std::size_t i, std::set<std::pair<std::size_t, Element>>& dead) {
    if (i == w.size()) return from == to;
    if (dead.count({i, from})) return false;
    bool found = false;
    if (w[i].sign == words::Sign::Positive) {
        found = path_exists(t, g, t.mul(from, g.image[w[i].base]), to, w, i + 1, dead);
    } else {
        for (Element q = 0; q < t.size() && !found; ++q)
            if (t.mul(q, g.image[w[i].base]) == from) found = path_exists(t, g, q, to, w, i + 1, dead);
    }
    if (!found) dead.insert({i, from});
    return found;
}

bool path_exists(const FiniteSemigroupTable& t, const GeneratorMap& g, Element from, Element to,
                 const InvolutiveWord& w) {
    std::set<std::pair<std::size_t, Element>> dead;
    return path_exists(t, g, from, to, w, 0, dead);
}

bool loop_member_by_paths(const FiniteSemigroupTable& t, const GeneratorMap& g, const InvolutiveWord& w) {
    return path_exists(t, g, *t.identity, *t.identity, w);
}

// The loop problem of Z2 in closed form: every letter occurrence flips parity.
bool z2_parity_member(const InvolutiveWord& w) { return w.size() % 2 == 0; }

// The loop problem of a free monoid in closed form: barred letters must pop a
// matching positive letter, and the stack must end empty.
bool free_monoid_stack_member(const InvolutiveWord& w) {
    PositiveWord stack;
    for (const auto& sl : w) {
        if (sl.sign == words::Sign::Positive) {
            stack.push_back(sl.base);
        } else {
            if (stack.empty() || stack.back() != sl.base) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

// The loop problem of the free monogenic monoid in closed form: a counter that
// must never go negative and must end at zero.
bool counter_member(const InvolutiveWord& w) {
    long long n = 0;
    for (const auto& sl : w) {
        n += sl.sign == words::Sign::Positive ? 1 : -1;
        if (n < 0) return false;
    }
    return n == 0;
}

}  // namespace

TEST_CASE("cayley graphs list every labelled multiplication") {
    auto s3 = builtins::make_builtin("S3");
    auto c = loopcore::cayley_graph(s3.table, s3.gens);
    REQUIRE(c.vertex == s3.table.elements);
    REQUIRE(c.identity == 0);
    REQUIRE(c.edges.size() == 12);
    for (const auto& e : c.edges) REQUIRE(e.to == s3.table.mul(e.from, s3.gens.image[e.label]));

    SECTION("requires an identity") {
        auto rz = builtins::make_builtin("right-zero-2");
        REQUIRE_THROWS_AS(loopcore::cayley_graph(rz.table, rz.gens), NotAMonoid);
    }
    SECTION("requires generating the whole monoid") {
        GeneratorMap only_b{words::Alphabet({"b"}), {4}, GenMode::Monoid};
        REQUIRE_THROWS_AS(loopcore::cayley_graph(s3.table, only_b), ValidationError);
    }
}

TEST_CASE("loop automata pair every edge with a reversed barred edge") {
    auto z2 = builtins::make_builtin("Z2");
    auto l = loopcore::loop_automaton(z2.table, z2.gens);
    REQUIRE(l.base.size() == 1);
    REQUIRE(l.hat.size() == 2);
    REQUIRE(l.hat.name(1) == "a'");
    REQUIRE(l.nfa.states == 2);
    REQUIRE(l.nfa.start == 0);
    REQUIRE((l.nfa.accepting == std::vector<char>{1, 0}));
    std::set<automata::Nfa::Edge> edges(l.nfa.edges.begin(), l.nfa.edges.end());
    std::set<automata::Nfa::Edge> expected{{0, 0, 1}, {1, 1, 0}, {1, 0, 0}, {0, 1, 1}};
    REQUIRE(edges == expected);

    SECTION("semigroup generators act on the semigroup with a fresh identity") {
        auto rz = builtins::make_builtin("right-zero-2");
        auto lr = loopcore::loop_automaton(rz.table, rz.gens);
        REQUIRE((lr.vertex == std::vector<std::string>{"r1", "r2", "1"}));
        REQUIRE(lr.identity == 2);
        REQUIRE(lr.nfa.states == 3);
        REQUIRE(lr.nfa.edges.size() == 12);
    }
}

TEST_CASE("loop problem automata for the smallest monoids") {
    SECTION("trivial monoid accepts every word") {
        auto t = builtins::make_builtin("trivial");
        Dfa expected;
        expected.symbols = 2;
        expected.states = 1;
        expected.start = 0;
        expected.accepting = {1};
        expected.delta = {{0, 0}};
        REQUIRE(loopcore::loop_problem_dfa(t.table, t.gens) == expected);
    }
    SECTION("Z2 accepts exactly the even-length words") {
        auto z2 = builtins::make_builtin("Z2");
        Dfa even;
        even.symbols = 2;
        even.states = 2;
        even.start = 0;
        even.accepting = {1, 0};
        even.delta = {{1, 1}, {0, 0}};
        REQUIRE(loopcore::loop_problem_dfa(z2.table, z2.gens) == automata::minimize(even));
    }
    SECTION("right-zero semigroup over its closure") {
        auto rz = builtins::make_builtin("right-zero-2");
        Dfa d = loopcore::loop_problem_dfa(rz.table, rz.gens);
        REQUIRE(d.states == 4);
        REQUIRE(automata::accepts(d, {}));
        REQUIRE(automata::accepts(d, {0, 2}));
        REQUIRE(automata::accepts(d, {0, 2, 2}));
        REQUIRE(!automata::accepts(d, {1, 2}));
        REQUIRE(!automata::accepts(d, {0, 1, 2}));
        REQUIRE(!automata::accepts(d, {2}));
    }
}

TEST_CASE("loop membership agrees with path enumeration and the minimal automaton") {
    for (const auto& name :
         {"trivial", "Z2", "Z3", "Z4", "S3", "T2", "right-zero-2", "rectangular-band-2x2", "rees-Z2-2x2"}) {
        INFO(name);
        auto src = builtins::make_builtin(name);
        auto [t, g] = loopcore::monoid_form(src.table, src.gens);
        Dfa d = loopcore::loop_problem_dfa(src.table, src.gens);
        const std::size_t k = g.alphabet.size();
        for (const auto& s : symbol_words_up_to(2 * k, 4)) {
            InvolutiveWord w = iw(k, s);
            bool member = loopcore::loop_membership(src.table, src.gens, w);
            REQUIRE(member == loop_member_by_paths(t, g, w));
            REQUIRE(member == automata::accepts(d, s));
        }
    }
}

TEST_CASE("oracle loop membership matches closed forms") {
    SECTION("finite table behind an oracle") {
        auto s3 = builtins::make_builtin("S3");
        algebra::TableOracle o(s3.table, s3.gens);
        for (const auto& s : symbol_words_up_to(4, 4)) {
            InvolutiveWord w = iw(2, s);
            REQUIRE(loopcore::loop_membership(o, w) == loopcore::loop_membership(s3.table, s3.gens, w));
        }
    }
    SECTION("free monoid behaves as a matching stack") {
        algebra::FreeMonoidOracle o(builtins::letters(2));
        for (const auto& s : symbol_words_up_to(4, 6)) {
            InvolutiveWord w = iw(2, s);
            REQUIRE(loopcore::loop_membership(o, w) == free_monoid_stack_member(w));
        }
    }
    SECTION("free monogenic monoid behaves as a counter") {
        algebra::FreeCommutativeOracle o(builtins::letters(1));
        for (const auto& s : symbol_words_up_to(2, 8)) {
            InvolutiveWord w = iw(1, s);
            REQUIRE(loopcore::loop_membership(o, w) == counter_member(w));
        }
    }
    SECTION("parity closed form for Z2") {
        auto z2 = builtins::make_builtin("Z2");
        for (const auto& s : symbol_words_up_to(2, 8)) {
            InvolutiveWord w = iw(1, s);
            REQUIRE(loopcore::loop_membership(z2.table, z2.gens, w) == z2_parity_member(w));
        }
    }
    SECTION("letters outside the alphabet are rejected") {
        auto z2 = builtins::make_builtin("Z2");
        InvolutiveWord w{words::pos(3)};
        REQUIRE_THROWS_AS(loopcore::loop_membership(z2.table, z2.gens, w), AlphabetMismatch);
    }
}

TEST_CASE("zig-zag witnesses characterize labelled paths") {
    SECTION("frozen witness for a a-bar in Z2") {
        auto z2 = builtins::make_builtin("Z2");
        auto z = loopcore::zigzag_check(z2.table, z2.gens, 0, 0, iw(1, {0, 1}));
        REQUIRE(z.has_value());
        REQUIRE(z->factorization.blocks() == 1);
        REQUIRE((z->points == std::vector<Element>{0, 0}));
        REQUIRE(loopcore::zigzag_witness_valid(z2.table, z2.gens, *z, 0, 0));
    }
    SECTION("a a-bar a-bar in Z4 reaches exactly one endpoint") {
        auto z4 = builtins::make_builtin("Z4");
        InvolutiveWord w = iw(1, {0, 1, 1});
        for (Element y = 0; y < 4; ++y) {
            auto z = loopcore::zigzag_check(z4.table, z4.gens, 0, y, w);
            REQUIRE(z.has_value() == (y == 3));
        }
    }
    SECTION("presence and validity match path enumeration") {
        for (const auto& name : {"Z4", "S3", "right-zero-2"}) {
            INFO(name);
            auto src = builtins::make_builtin(name);
            auto [t, g] = loopcore::monoid_form(src.table, src.gens);
            const std::size_t k = g.alphabet.size();
            for (const auto& s : symbol_words_up_to(2 * k, 3)) {
                InvolutiveWord w = iw(k, s);
                for (Element x = 0; x < t.size(); ++x)
                    for (Element y = 0; y < t.size(); ++y) {
                        auto z = loopcore::zigzag_check(src.table, src.gens, x, y, w);
                        REQUIRE(z.has_value() == path_exists(t, g, x, y, w));
                        if (z) {
                            REQUIRE(z->points.size() == z->factorization.blocks() + 1);
                            REQUIRE(loopcore::zigzag_witness_valid(src.table, src.gens, *z, x, y));
                            REQUIRE(words::zigzag_recompose(z->factorization) == w);
                        }
                    }
            }
        }
    }
    SECTION("out-of-range elements are rejected") {
        auto z2 = builtins::make_builtin("Z2");
        REQUIRE_THROWS_AS(loopcore::zigzag_check(z2.table, z2.gens, 0, 9, {}), PreconditionViolated);
    }
}

TEST_CASE("word equality reduces to loop membership") {
    SECTION("finite monoid") {
        auto s3 = builtins::make_builtin("S3");
        for (const auto& u : positive_words_up_to(2, 3))
            for (const auto& v : positive_words_up_to(2, 3)) {
                bool same = algebra::eval_word(s3.table, s3.gens, u) == algebra::eval_word(s3.table, s3.gens, v);
                REQUIRE(loopcore::words_equal(s3.table, s3.gens, u, v) == same);
            }
    }
    SECTION("semigroup generators reject the empty word") {
        auto rz = builtins::make_builtin("right-zero-2");
        REQUIRE(loopcore::words_equal(rz.table, rz.gens, pw({0, 1}), pw({1})));
        REQUIRE(!loopcore::words_equal(rz.table, rz.gens, pw({1, 0}), pw({1})));
        REQUIRE_THROWS_AS(loopcore::words_equal(rz.table, rz.gens, {}, pw({1})), EmptyWordInSemigroupMode);
    }
    SECTION("free monoid oracle") {
        algebra::FreeMonoidOracle o(builtins::letters(2));
        for (const auto& u : positive_words_up_to(2, 3))
            for (const auto& v : positive_words_up_to(2, 3))
                REQUIRE(loopcore::words_equal(o, u, v) == (u == v));
    }
}

TEST_CASE("meeting problem is the loop problem cut to positive-negative shape") {
    SECTION("accepted words decide word equality") {
        auto s3 = builtins::make_builtin("S3");
        Dfa meet = loopcore::meeting_problem(s3.table, s3.gens);
        for (const auto& u : positive_words_up_to(2, 3))
            for (const auto& v : positive_words_up_to(2, 3)) {
                SymbolWord s = words::to_symbols(
                    words::concat(words::to_word(u), words::bar_word(v)), 2);
                bool same = algebra::eval_word(s3.table, s3.gens, u) == algebra::eval_word(s3.table, s3.gens, v);
                REQUIRE(automata::accepts(meet, s) == same);
            }
    }
    SECTION("every accepted word has the shape") {
        auto z4 = builtins::make_builtin("Z4");
        Dfa meet = loopcore::meeting_problem(z4.table, z4.gens);
        Dfa loop = loopcore::loop_problem_dfa(z4.table, z4.gens);
        for (const auto& s : symbol_words_up_to(2, 6)) {
            bool shaped = true;
            for (std::size_t i = 1; i < s.size(); ++i)
                if (s[i] < 1 && s[i - 1] >= 1) shaped = false;
            REQUIRE(automata::accepts(meet, s) == (shaped && automata::accepts(loop, s)));
        }
        REQUIRE(automata::accepts(loop, {1, 0}));
        REQUIRE(!automata::accepts(meet, {1, 0}));
    }
}

TEST_CASE("loops everywhere checks every vertex at once") {
    SECTION("frozen examples") {
        auto z2 = builtins::make_builtin("Z2");
        REQUIRE(loopcore::loops_everywhere(z2.table, z2.gens, iw(1, {0, 1})));
        REQUIRE(!loopcore::loops_everywhere(z2.table, z2.gens, iw(1, {0})));
        auto rz = builtins::make_builtin("right-zero-2");
        REQUIRE(loopcore::loops_everywhere(rz.table, rz.gens, iw(2, {0, 2})));
        REQUIRE(!loopcore::loops_everywhere(rz.table, rz.gens, iw(2, {0, 3})));
    }
    SECTION("agrees with per-vertex path checks") {
        for (const auto& name : {"Z4", "right-zero-2"}) {
            INFO(name);
            auto src = builtins::make_builtin(name);
            auto [t, g] = loopcore::monoid_form(src.table, src.gens);
            const std::size_t k = g.alphabet.size();
            for (const auto& s : symbol_words_up_to(2 * k, 4)) {
                InvolutiveWord w = iw(k, s);
                bool all = true;
                for (Element m = 0; m < t.size() && all; ++m) all = path_exists(t, g, m, m, w);
                REQUIRE(loopcore::loops_everywhere(src.table, src.gens, w) == all);
            }
        }
    }
    SECTION("group loop problems loop everywhere") {
        auto s3 = builtins::make_builtin("S3");
        for (const auto& s : symbol_words_up_to(4, 4)) {
            InvolutiveWord w = iw(2, s);
            bool member = loopcore::loop_membership(s3.table, s3.gens, w);
            REQUIRE(loopcore::loops_everywhere(s3.table, s3.gens, w) == member);
        }
    }
}

TEST_CASE("shortest word representatives are length-lexicographic") {
    auto s3 = builtins::make_builtin("S3");
    auto reps = loopcore::shortest_words(s3.table, s3.gens);
    REQUIRE((*reps[0] == PositiveWord{}));
    REQUIRE((*reps[1] == PositiveWord{0}));
    REQUIRE((*reps[4] == PositiveWord{1}));
    REQUIRE((*reps[2] == PositiveWord{0, 1}));
    for (Element m = 0; m < s3.table.size(); ++m)
        REQUIRE(algebra::eval_word(s3.table, s3.gens, *reps[m]) == m);

    GeneratorMap only_a{words::Alphabet({"a"}), {1}, GenMode::Monoid};
    auto partial = loopcore::shortest_words(s3.table, only_a);
    REQUIRE(partial[0].has_value());
    REQUIRE(partial[1].has_value());
    REQUIRE(!partial[4].has_value());
}

TEST_CASE("semigroup and monoid loop problems determine each other") {
    SECTION("cyclic group of order two") {
        auto z2 = builtins::make_builtin("Z2");
        GeneratorMap semi{z2.gens.alphabet, z2.gens.image, GenMode::Semigroup};
        auto r = loopcore::semigroup_monoid_relation_check(z2.table, semi);
        REQUIRE((r.identity_word == PositiveWord{0, 0}));
        REQUIRE(r.restriction_holds);
        REQUIRE(r.quotient_holds);
    }
    SECTION("symmetric group on three points") {
        auto s3 = builtins::make_builtin("S3");
        GeneratorMap semi{s3.gens.alphabet, s3.gens.image, GenMode::Semigroup};
        auto r = loopcore::semigroup_monoid_relation_check(s3.table, semi);
        REQUIRE((r.identity_word == PositiveWord{0, 0}));
        REQUIRE(r.restriction_holds);
        REQUIRE(r.quotient_holds);
    }
    SECTION("full transformation monoid on two points") {
        auto t2 = builtins::make_builtin("T2");
        GeneratorMap semi{t2.gens.alphabet, t2.gens.image, GenMode::Semigroup};
        auto r = loopcore::semigroup_monoid_relation_check(t2.table, semi);
        REQUIRE((r.identity_word == PositiveWord{0, 0}));
        REQUIRE(r.restriction_holds);
        REQUIRE(r.quotient_holds);
    }
    SECTION("trivial monoid") {
        auto t = builtins::make_builtin("trivial");
        GeneratorMap semi{t.gens.alphabet, t.gens.image, GenMode::Semigroup};
        auto r = loopcore::semigroup_monoid_relation_check(t.table, semi);
        REQUIRE((r.identity_word == PositiveWord{0}));
        REQUIRE(r.restriction_holds);
        REQUIRE(r.quotient_holds);
    }
    SECTION("tables without identity are rejected") {
        auto rz = builtins::make_builtin("right-zero-2");
        REQUIRE_THROWS_AS(loopcore::semigroup_monoid_relation_check(rz.table, rz.gens), NotAMonoid);
    }
    SECTION("monoid-mode generators are rejected") {
        auto z2 = builtins::make_builtin("Z2");
        REQUIRE_THROWS_AS(loopcore::semigroup_monoid_relation_check(z2.table, z2.gens),
                          PreconditionViolated);
    }
    SECTION("no non-empty word may reach the identity") {
        FiniteSemigroupTable t;
        t.elements = {"1", "z"};
        t.table = {{0, 1}, {1, 1}};
        t.identity = 0;
        GeneratorMap g{words::Alphabet({"a"}), {1}, GenMode::Semigroup};
        REQUIRE_THROWS_AS(loopcore::semigroup_monoid_relation_check(t, g), NoIdentityWord);
    }
}

TEST_CASE("generator change rewrites one loop problem into another") {
    SECTION("two generating sets of S3") {
        auto s3 = builtins::make_builtin("S3");
        auto r = loopcore::generator_change(s3.table, s3.gens, *s3.alt_gens);
        REQUIRE(r.verified);
        REQUIRE((r.chosen == std::vector<PositiveWord>{{0}, {0, 1}}));
        REQUIRE((r.rho[0] == SymbolWord{0}));
        REQUIRE((r.rho[1] == SymbolWord{0, 1}));
        REQUIRE((r.rho[2] == SymbolWord{2}));
        REQUIRE((r.rho[3] == SymbolWord{3, 2}));
    }
    SECTION("one and two generators of Z4") {
        auto z4 = builtins::make_builtin("Z4");
        auto r = loopcore::generator_change(z4.table, z4.gens, *z4.alt_gens);
        REQUIRE(r.verified);
        REQUIRE((r.chosen == std::vector<PositiveWord>{{0}, {0, 0}}));
    }
    SECTION("non-generating target map is rejected") {
        auto z4 = builtins::make_builtin("Z4");
        GeneratorMap only_d{words::Alphabet({"d"}), {2}, GenMode::Monoid};
        REQUIRE_THROWS_AS(loopcore::generator_change(z4.table, z4.gens, only_d), ValidationError);
    }
    SECTION("mixed modes are rejected") {
        auto z4 = builtins::make_builtin("Z4");
        GeneratorMap semi{z4.gens.alphabet, z4.gens.image, GenMode::Semigroup};
        REQUIRE_THROWS_AS(loopcore::generator_change(z4.table, z4.gens, semi), PreconditionViolated);
    }
}

TEST_CASE("group loop problems are word problems over the hat alphabet") {
    SECTION("S3") {
        auto s3 = builtins::make_builtin("S3");
        auto r = loopcore::group_loop_as_word_problem(s3.table, s3.gens);
        REQUIRE(r.matches_loop_automaton);
        REQUIRE(r.word_problem.states == 6);
        REQUIRE((r.tau.image == std::vector<Element>{1, 4, 1, 5}));
        REQUIRE(automata::dfa_equivalent(automata::minimize(r.word_problem),
                                         loopcore::loop_problem_dfa(s3.table, s3.gens)));
    }
    SECTION("Z4") {
        auto z4 = builtins::make_builtin("Z4");
        auto r = loopcore::group_loop_as_word_problem(z4.table, z4.gens);
        REQUIRE(r.matches_loop_automaton);
        REQUIRE((r.tau.image == std::vector<Element>{1, 3}));
        REQUIRE(r.tau.alphabet.name(1) == "a'");
    }
    SECTION("non-groups are rejected") {
        auto t2 = builtins::make_builtin("T2");
        REQUIRE_THROWS_AS(loopcore::group_loop_as_word_problem(t2.table, t2.gens), NotAGroup);
        auto rz = builtins::make_builtin("right-zero-2");
        REQUIRE_THROWS_AS(loopcore::group_loop_as_word_problem(rz.table, rz.gens), NotAGroup);
    }
}

TEST_CASE("distinct cone certificates") {
    SECTION("free monogenic monoid has arbitrarily many cones") {
        algebra::FreeCommutativeOracle o(builtins::letters(1));
        auto c = loopcore::distinct_cones_witness(o, 5);
        REQUIRE((c.prefixes ==
                 std::vector<PositiveWord>{{}, {0}, {0, 0}, {0, 0, 0}, {0, 0, 0, 0}}));
        REQUIRE((c.keys == std::vector<std::string>{"0", "1", "2", "3", "4"}));
        REQUIRE(c.discriminators[2] == words::bar_word(pw({0, 0})));
    }
    SECTION("free monoid on two letters") {
        algebra::FreeMonoidOracle o(builtins::letters(2));
        auto c = loopcore::distinct_cones_witness(o, 7, 2);
        REQUIRE((c.prefixes == std::vector<PositiveWord>{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}}));
        REQUIRE(c.keys[4] == "ab");
    }
    SECTION("finite monoids run out of elements") {
        auto z2 = builtins::make_builtin("Z2");
        algebra::TableOracle o(z2.table, z2.gens);
        REQUIRE_THROWS_AS(loopcore::distinct_cones_witness(o, 3), NotEnoughElements);
        auto c = loopcore::distinct_cones_witness(o, 2);
        REQUIRE((c.keys == std::vector<std::string>{"0", "1"}));
    }
    SECTION("division is required") {
        struct NoDivision final : algebra::MonoidOracle {
            words::Alphabet a{std::vector<std::string>{"a"}};
            const words::Alphabet& alphabet() const override { return a; }
            std::string identity_key() const override { return ""; }
            std::string right_multiply(const std::string& key, words::Letter) const override {
                return key + "a";
            }
            bool has_right_divide() const override { return false; }
            std::vector<std::string> right_divide(const std::string&, words::Letter) const override {
                return {};
            }
        } o;
        REQUIRE_THROWS_AS(loopcore::distinct_cones_witness(o, 2), OracleLacksDivision);
    }
    SECTION("zero cones is an empty certificate") {
        algebra::FreeCommutativeOracle o(builtins::letters(1));
        REQUIRE(loopcore::distinct_cones_witness(o, 0).prefixes.empty());
    }
}

TEST_CASE("loop balls restrict the loop automaton to a radius") {
    SECTION("free monoid ball of radius two") {
        algebra::FreeMonoidOracle o(builtins::letters(2));
        auto b = loopcore::loop_ball(o, 2);
        REQUIRE((b.vertex == std::vector<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"}));
        REQUIRE((b.distance == std::vector<std::size_t>{0, 1, 1, 2, 2, 2, 2}));
        REQUIRE((b.boundary == std::vector<char>{0, 0, 0, 1, 1, 1, 1}));
        REQUIRE(b.nfa.states == 7);
        REQUIRE(b.nfa.edges.size() == 12);
        REQUIRE(automata::membership(b.nfa, {0, 1, 3, 2}));

        SECTION("balls are not authoritative beyond their radius") {
            SymbolWord deep{0, 0, 0, 2, 2, 2};
            REQUIRE(!automata::membership(b.nfa, deep));
            REQUIRE(loopcore::loop_membership(o, iw(2, deep)));
        }
    }
    SECTION("small finite monoid fits inside a large ball") {
        auto z2 = builtins::make_builtin("Z2");
        algebra::TableOracle o(z2.table, z2.gens);
        auto b = loopcore::loop_ball(o, 5);
        REQUIRE((b.vertex == std::vector<std::string>{"0", "1"}));
        REQUIRE((b.boundary == std::vector<char>{0, 0}));
        for (const auto& s : symbol_words_up_to(2, 6))
            REQUIRE(automata::membership(b.nfa, s) == loopcore::loop_membership(o, iw(1, s)));
    }
    SECTION("radius zero keeps only the identity") {
        algebra::FreeMonoidOracle o(builtins::letters(2));
        auto b = loopcore::loop_ball(o, 0);
        REQUIRE((b.vertex == std::vector<std::string>{""}));
        REQUIRE(b.nfa.edges.empty());
        REQUIRE(automata::membership(b.nfa, {}));
    }
}
