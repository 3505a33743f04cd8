#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/builtins.hpp"
#include "loopauto/invhull.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/words.hpp"

namespace {

using namespace loopauto;
using algebra::Element;
using algebra::GeneratorMap;
using algebra::GenMode;
using invhull::BicyclicElement;
using invhull::kUndefined;
using invhull::PartialBijection;
using invhull::polycyclic_eval;
using invhull::PolycyclicElement;
using words::Alphabet;
using words::bar;
using words::InvolutiveWord;
using words::Letter;
using words::pos;
using words::PositiveWord;
using words::Sign;

// Independent membership oracle for the loop problem of a free monoid: a
// positive letter pushes, a barred letter must pop an equal letter, and the
// word is a loop exactly when the stack drains without ever failing a pop.
bool stack_member(const InvolutiveWord& w) {
    std::vector<Letter> stack;
    for (const auto& sl : w) {
        if (sl.sign == Sign::Positive) {
            stack.push_back(sl.base);
        } else {
            if (stack.empty() || stack.back() != sl.base) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

std::vector<InvolutiveWord> all_words(std::size_t letters, std::size_t maxlen) {
    std::vector<InvolutiveWord> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t s = 0; s < 2 * letters; ++s) {
                InvolutiveWord w = out[i];
                w.push_back(words::signed_of(s, letters));
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

InvolutiveWord cat3(const InvolutiveWord& x, const InvolutiveWord& m, const InvolutiveWord& y) {
    return words::concat(x, words::concat(m, y));
}

struct NoDivisionOracle final : algebra::MonoidOracle {
    algebra::FreeMonoidOracle inner;

    explicit NoDivisionOracle(Alphabet a) : inner(std::move(a)) {}

    const Alphabet& alphabet() const override { return inner.alphabet(); }
    std::string identity_key() const override { return inner.identity_key(); }
    std::string right_multiply(const std::string& key, Letter x) const override {
        return inner.right_multiply(key, x);
    }
    bool has_right_divide() const override { return false; }
    std::vector<std::string> right_divide(const std::string&, Letter) const override {
        throw OracleLacksDivision("oracle: division disabled");
    }
};

}  // namespace

TEST_CASE("partial bijections compose and invert") {
    PartialBijection f{{2, kUndefined, 0}};
    PartialBijection g{{1, 2, kUndefined}};
    invhull::validate(f);
    invhull::validate(g);

    REQUIRE((invhull::compose(f, g) == PartialBijection{{kUndefined, kUndefined, 1}}));
    REQUIRE((invhull::relational_inverse(f) == PartialBijection{{2, kUndefined, 0}}));
    REQUIRE((invhull::relational_inverse(g) == PartialBijection{{kUndefined, 0, 1}}));
    REQUIRE(invhull::compose(f, invhull::relational_inverse(f)).map[0] == 0);
    REQUIRE((invhull::compose(invhull::identity_bijection(3), g) == g));
    REQUIRE((invhull::compose(g, invhull::identity_bijection(3)) == g));

    REQUIRE_THROWS_AS(invhull::validate(PartialBijection{{0, 0}}), ValidationError);
    REQUIRE_THROWS_AS(invhull::validate(PartialBijection{{5, 0}}), ValidationError);
    REQUIRE_THROWS_AS(invhull::compose(f, PartialBijection{{0}}), ValidationError);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 5;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        PartialBijection h;
        h.map.resize(n);
        for (std::size_t i = 0; i < n; ++i) h.map[i] = rng() % 2 ? perm[i] : kUndefined;
        invhull::validate(h);
        PartialBijection back = invhull::compose(
            invhull::compose(h, invhull::relational_inverse(h)), h);
        REQUIRE((back == h));
    }

    REQUIRE(invhull::partial_map_description(f, {"e", "g", "z"}) == "{e->z, z->e}");
    REQUIRE(invhull::partial_map_description(PartialBijection{{kUndefined}}, {"e"}) == "{}");
}

TEST_CASE("right translations are table columns") {
    auto z2 = builtins::cyclic_table(2);
    REQUIRE((invhull::right_translation(z2, 0) == invhull::identity_bijection(2)));
    REQUIRE((invhull::right_translation(z2, 1) == PartialBijection{{1, 0}}));

    auto s3 = builtins::s3_table();
    for (Element m = 0; m < s3.size(); ++m) {
        PartialBijection f = invhull::right_translation(s3, m);
        std::vector<std::size_t> sorted = f.map;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);
        for (Element x = 0; x < s3.size(); ++x) REQUIRE(f.map[x] == s3.mul(x, m));
    }
    for (Element a = 0; a < s3.size(); ++a)
        for (Element b = 0; b < s3.size(); ++b) {
            PartialBijection lhs = invhull::compose(invhull::right_translation(s3, a),
                                                    invhull::right_translation(s3, b));
            REQUIRE((lhs == invhull::right_translation(s3, s3.mul(a, b))));
        }

    REQUIRE_THROWS_AS(invhull::right_translation(z2, 2), PreconditionViolated);
    REQUIRE_THROWS_AS(invhull::right_translation(builtins::right_zero_table(2), 0), NotAMonoid);
    auto rz1 = algebra::adjoin_identity(builtins::right_zero_table(2));
    REQUIRE_THROWS_AS(invhull::right_translation(rz1, 0), NotRightCancellative);
}

TEST_CASE("finite inverse hulls of groups") {
    auto trivial = builtins::make_builtin("trivial");
    auto th = invhull::inverse_hull_finite(trivial.table, trivial.gens);
    REQUIRE(th.size() == 1);
    REQUIRE(th.carrier == 1);
    REQUIRE((th.elements[0] == invhull::identity_bijection(1)));
    REQUIRE(th.rho[0] == 0);
    REQUIRE(th.rho_inverse[0] == 0);
    REQUIRE(th.table.elements == std::vector<std::string>{"ε"});

    auto z2 = builtins::make_builtin("Z2");
    auto h2 = invhull::inverse_hull_finite(z2.table, z2.gens);
    REQUIRE(h2.size() == 2);
    REQUIRE((h2.elements[1] == PartialBijection{{1, 0}}));
    REQUIRE(h2.rho[0] == 1);
    REQUIRE(h2.rho_inverse[0] == 1);
    REQUIRE(h2.inverse == std::vector<std::size_t>{0, 1});
    REQUIRE(h2.table.elements == std::vector<std::string>{"ε", "a"});
    REQUIRE(algebra::find_isomorphism(h2.table, builtins::cyclic_table(2)).has_value());

    auto z4 = builtins::make_builtin("Z4");
    auto h4 = invhull::inverse_hull_finite(z4.table, z4.gens);
    REQUIRE(h4.size() == 4);
    REQUIRE(algebra::find_isomorphism(h4.table, builtins::cyclic_table(4)).has_value());

    auto s3 = builtins::make_builtin("S3");
    auto h6 = invhull::inverse_hull_finite(s3.table, s3.gens);
    REQUIRE(h6.size() == 6);
    REQUIRE(algebra::find_isomorphism(h6.table, builtins::s3_table()).has_value());
    for (const auto& f : h6.elements)
        for (std::size_t v : f.map) REQUIRE(v != kUndefined);

    auto z3two = builtins::make_builtin("Z3");
    REQUIRE(z3two.alt_gens.has_value());
    auto h3 = invhull::inverse_hull_finite(z3two.table, *z3two.alt_gens);
    REQUIRE(h3.size() == 3);
    REQUIRE(algebra::find_isomorphism(h3.table, builtins::cyclic_table(3)).has_value());
}

TEST_CASE("inverse hull closure satisfies the inverse monoid laws") {
    for (const char* name : {"Z4", "S3"}) {
        auto src = builtins::make_builtin(name);
        auto h = invhull::inverse_hull_finite(src.table, src.gens);
        invhull::validate(h);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& f = h.elements[i];
            const auto& fi = h.elements[h.inverse[i]];
            REQUIRE((invhull::compose(invhull::compose(f, fi), f) == f));
            REQUIRE((invhull::relational_inverse(f) == fi));
        }
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (h.table.mul(i, i) != i) continue;
            for (std::size_t j = 0; j < h.size(); ++j) {
                if (h.table.mul(j, j) != j) continue;
                REQUIRE(h.table.mul(i, j) == h.table.mul(j, i));
            }
        }
    }

    auto rz = builtins::make_builtin("right-zero-2");
    REQUIRE_THROWS_AS(invhull::inverse_hull_finite(rz.table, rz.gens), NotRightCancellative);
    auto z2 = builtins::make_builtin("Z2");
    GeneratorMap semi{z2.gens.alphabet, z2.gens.image, GenMode::Semigroup};
    REQUIRE_THROWS_AS(invhull::inverse_hull_finite(z2.table, semi), NotRightCancellative);
}

TEST_CASE("polycyclic generators and normal forms") {
    Alphabet ab = builtins::letters(2);

    REQUIRE((polycyclic_eval(ab, {pos(0)}) == PolycyclicElement{false, {}, {0}}));
    REQUIRE((polycyclic_eval(ab, {bar(0)}) == PolycyclicElement{false, {0}, {}}));
    REQUIRE((polycyclic_eval(ab, {pos(0), bar(0)}) == invhull::polycyclic_identity()));
    REQUIRE((polycyclic_eval(ab, {bar(0), pos(0)}) == PolycyclicElement{false, {0}, {0}}));
    REQUIRE((polycyclic_eval(ab, {pos(0), bar(1)}) == invhull::polycyclic_zero()));
    REQUIRE((polycyclic_eval(ab, {pos(0), pos(1)}) == PolycyclicElement{false, {}, {0, 1}}));
    REQUIRE((polycyclic_eval(ab, {}) == invhull::polycyclic_identity()));

    REQUIRE(invhull::render_polycyclic(ab, polycyclic_eval(ab, {pos(0), bar(0)})) == "(ε|ε)");
    REQUIRE(invhull::render_polycyclic(ab, polycyclic_eval(ab, {bar(0), pos(0)})) == "(a|a)");
    REQUIRE(invhull::render_polycyclic(ab, polycyclic_eval(ab, {pos(0), bar(1)})) == "0");
    REQUIRE(invhull::render_polycyclic(ab, polycyclic_eval(ab, {bar(0)})) == "(a|ε)");
    REQUIRE(invhull::render_polycyclic(ab, polycyclic_eval(ab, {pos(0), pos(1)})) == "(ε|ab)");

    REQUIRE_THROWS_AS(polycyclic_eval(builtins::letters(1), {pos(1)}), AlphabetMismatch);

    PolycyclicElement zero = invhull::polycyclic_zero();
    PolycyclicElement some{false, {0}, {1}};
    REQUIRE((invhull::polycyclic_compose(zero, some) == zero));
    REQUIRE((invhull::polycyclic_compose(some, zero) == zero));
}

TEST_CASE("polycyclic evaluation is a morphism") {
    Alphabet ab = builtins::letters(2);
    auto vocab = all_words(2, 4);
    std::vector<PolycyclicElement> form;
    form.reserve(vocab.size());
    for (const auto& w : vocab) form.push_back(polycyclic_eval(ab, w));

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i)
        for (std::size_t j = 0; j < vocab.size(); ++j) {
            PolycyclicElement whole = polycyclic_eval(ab, words::concat(vocab[i], vocab[j]));
            if (!(whole == invhull::polycyclic_compose(form[i], form[j]))) ++mismatches;
        }
    REQUIRE(mismatches == 0);
}

TEST_CASE("polycyclic forms decide free monoid loop membership") {
    Alphabet ab = builtins::letters(2);
    algebra::FreeMonoidOracle oracle(ab);
    auto vocab = all_words(2, 8);

    std::size_t bridge_breaks = 0, oracle_breaks = 0;
    for (const auto& w : vocab) {
        bool direct = stack_member(w);
        bool viaForm = polycyclic_eval(ab, w) == invhull::polycyclic_identity();
        if (direct != viaForm) ++bridge_breaks;
        if (w.size() <= 6 && direct != loopcore::loop_membership(oracle, w)) ++oracle_breaks;
    }
    REQUIRE(bridge_breaks == 0);
    REQUIRE(oracle_breaks == 0);
}

TEST_CASE("bicyclic agrees with the one letter polycyclic hull") {
    Alphabet a1 = builtins::letters(1);

    REQUIRE((invhull::bicyclic_eval({pos(0), bar(0)}) == BicyclicElement{0, 0}));
    REQUIRE((invhull::bicyclic_eval({bar(0)}) == BicyclicElement{1, 0}));
    REQUIRE((invhull::bicyclic_eval({pos(0)}) == BicyclicElement{0, 1}));
    REQUIRE((invhull::bicyclic_eval({bar(0), pos(0)}) == BicyclicElement{1, 1}));
    REQUIRE_THROWS_AS(invhull::bicyclic_eval({pos(1)}), AlphabetMismatch);

    for (const auto& w : all_words(1, 8)) {
        BicyclicElement b = invhull::bicyclic_eval(w);
        PolycyclicElement p = polycyclic_eval(a1, w);
        REQUIRE(!p.zero);
        REQUIRE(p.u.size() == b.p);
        REQUIRE(p.v.size() == b.q);
        REQUIRE((stack_member(w) == (b == BicyclicElement{0, 0})));
    }
}

TEST_CASE("bounded syntactic equivalence with witnesses") {
    auto member1 = [](const InvolutiveWord& w) { return stack_member(w); };

    InvolutiveWord aabar{pos(0), bar(0)};
    InvolutiveWord abara{bar(0), pos(0)};
    REQUIRE(invhull::bounded_syntactic_equivalence(1, member1, aabar, aabar, 3));

    auto w = invhull::bounded_equivalence_witness(1, member1, aabar, abara, 5);
    REQUIRE(w.has_value());
    REQUIRE(w->first.empty());
    REQUIRE(w->second.empty());
    REQUIRE(member1(cat3(w->first, aabar, w->second)) !=
            member1(cat3(w->first, abara, w->second)));

    auto member2 = [](const InvolutiveWord& w2) { return stack_member(w2); };
    REQUIRE(invhull::bounded_syntactic_equivalence(2, member2, aabar, {}, 4));
    auto w2 = invhull::bounded_equivalence_witness(2, member2, abara, {}, 4);
    REQUIRE(w2.has_value());
    REQUIRE(w2->first.empty());
    REQUIRE(w2->second.empty());

    auto w3 = invhull::bounded_equivalence_witness(1, member1, {pos(0)},
                                                   {pos(0), pos(0)}, 3);
    REQUIRE(w3.has_value());
    REQUIRE(w3->first.empty());
    REQUIRE((w3->second == InvolutiveWord{bar(0)}));
}

TEST_CASE("equal polycyclic forms are bounded equivalent, distinct ones separate") {
    Alphabet ab = builtins::letters(2);
    auto member = [](const InvolutiveWord& w) { return stack_member(w); };
    auto vocab = all_words(2, 5);
    std::vector<PolycyclicElement> form;
    form.reserve(vocab.size());
    for (const auto& w : vocab) form.push_back(polycyclic_eval(ab, w));

    // Context-wise agreement is transitive, so checking every word against its
    // form class representative covers all pairs with equal forms.
    std::map<std::tuple<bool, PositiveWord, PositiveWord>, std::size_t> rep;
    std::size_t equal_breaks = 0, equal_members = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        auto key = std::make_tuple(form[i].zero, form[i].u, form[i].v);
        auto [it, fresh] = rep.try_emplace(key, i);
        if (fresh) continue;
        ++equal_members;
        if (!invhull::bounded_syntactic_equivalence(2, member, vocab[it->second], vocab[i], 2))
            ++equal_breaks;
    }
    REQUIRE(equal_members > 0);
    REQUIRE(equal_breaks == 0);

    std::size_t separation_misses = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i)
        for (std::size_t j = i + 1; j < vocab.size(); ++j) {
            if (form[i] == form[j]) continue;
            std::vector<std::pair<InvolutiveWord, InvolutiveWord>> contexts{{{}, {}}};
            for (const auto* f : {&form[i], &form[j]}) {
                if (f->zero) continue;
                contexts.push_back({words::to_word(f->u), words::bar_word(f->v)});
            }
            bool separated = false;
            for (const auto& [x, y] : contexts)
                if (member(cat3(x, vocab[i], y)) != member(cat3(x, vocab[j], y))) {
                    separated = true;
                    break;
                }
            if (!separated) ++separation_misses;
        }
    REQUIRE(separation_misses == 0);

    auto member1 = [](const InvolutiveWord& w) { return stack_member(w); };
    auto ray = all_words(1, 4);
    for (std::size_t i = 0; i < ray.size(); ++i)
        for (std::size_t j = i + 1; j < ray.size(); ++j) {
            bool same = invhull::bicyclic_eval(ray[i]) == invhull::bicyclic_eval(ray[j]);
            bool equiv =
                invhull::bounded_syntactic_equivalence(1, member1, ray[i], ray[j], 6);
            REQUIRE(same == equiv);
        }
}

TEST_CASE("loop automata of finite right cancellative monoids are minimal") {
    auto s3 = builtins::make_builtin("S3");
    auto r = invhull::verify_minimality(s3.table, s3.gens);
    REQUIRE(r.vertices == 6);
    REQUIRE(r.deterministic);
    REQUIRE(r.trim);
    REQUIRE(r.separated_pairs == 15);
    REQUIRE(r.witnesses.size() == 15);

    loopcore::LoopAutomaton la = loopcore::loop_automaton(s3.table, s3.gens);
    const std::size_t k = s3.gens.alphabet.size();
    for (const auto& wit : r.witnesses) {
        auto sym = words::to_symbols(wit.word, k);
        REQUIRE(automata::accepts(automata::cone(la.nfa, wit.p), sym));
        REQUIRE(!automata::accepts(automata::cone(la.nfa, wit.q), sym));
    }

    auto z2 = builtins::make_builtin("Z2");
    auto r2 = invhull::verify_minimality(z2.table, z2.gens);
    REQUIRE(r2.vertices == 2);
    REQUIRE(r2.separated_pairs == 1);
    REQUIRE(r2.deterministic);
    REQUIRE(r2.trim);

    auto trivial = builtins::make_builtin("trivial");
    auto r1 = invhull::verify_minimality(trivial.table, trivial.gens);
    REQUIRE(r1.vertices == 1);
    REQUIRE(r1.separated_pairs == 0);

    auto rz = builtins::make_builtin("right-zero-2");
    REQUIRE_THROWS_AS(invhull::verify_minimality(rz.table, rz.gens), NotRightCancellative);
}

TEST_CASE("loop balls of oracle monoids are minimal") {
    algebra::FreeMonoidOracle free2(builtins::letters(2));
    auto r = invhull::verify_minimality(free2, 4);
    REQUIRE(r.vertices == 31);
    REQUIRE(r.deterministic);
    REQUIRE(r.trim);
    REQUIRE(r.separated_pairs == 31 * 30 / 2);

    loopcore::Ball ball = loopcore::loop_ball(free2, 4);
    for (const auto& wit : r.witnesses) {
        InvolutiveWord from_p = words::to_word(
            words::parse_positive_word(free2.alphabet(), ball.vertex[wit.p]));
        InvolutiveWord from_q = words::to_word(
            words::parse_positive_word(free2.alphabet(), ball.vertex[wit.q]));
        REQUIRE(stack_member(words::concat(from_p, wit.word)));
        REQUIRE(!stack_member(words::concat(from_q, wit.word)));
    }

    algebra::FreeMonoidOracle free1(builtins::letters(1));
    auto r1 = invhull::verify_minimality(free1, 3);
    REQUIRE(r1.vertices == 4);
    REQUIRE(r1.separated_pairs == 6);

    algebra::FreeCommutativeOracle comm2(builtins::letters(2));
    auto rc = invhull::verify_minimality(comm2, 3);
    REQUIRE(rc.vertices == 10);
    REQUIRE(rc.deterministic);
    REQUIRE(rc.separated_pairs == 45);

    NoDivisionOracle blind(builtins::letters(2));
    REQUIRE_THROWS_AS(invhull::verify_minimality(blind, 2), BallTooSmall);
    auto r0 = invhull::verify_minimality(blind, 0);
    REQUIRE(r0.vertices == 1);
    REQUIRE(r0.separated_pairs == 0);
}

TEST_CASE("syntactic monoid of a group loop problem is its inverse hull") {
    for (const char* name : {"trivial", "Z2", "Z4", "S3"}) {
        auto src = builtins::make_builtin(name);
        auto r = invhull::verify_inverse_hull_theorem(src.table, src.gens);
        REQUIRE(r.isomorphism.has_value());
        REQUIRE(r.action_coincides);
        REQUIRE(r.hull.size() == src.table.size());
        REQUIRE(r.syntactic.size() == src.table.size());
        const std::size_t k = src.gens.alphabet.size();
        for (Letter x = 0; x < k; ++x) {
            REQUIRE((*r.isomorphism)[r.syntactic.monoid.letter_class[x]] == r.hull.rho[x]);
            REQUIRE((*r.isomorphism)[r.syntactic.monoid.letter_class[k + x]] ==
                    r.hull.rho_inverse[x]);
        }
    }

    auto rz = builtins::make_builtin("right-zero-2");
    REQUIRE_THROWS_AS(invhull::verify_inverse_hull_theorem(rz.table, rz.gens),
                      NotRightCancellative);
    auto t2 = builtins::make_builtin("T2");
    REQUIRE_THROWS_AS(invhull::verify_inverse_hull_theorem(t2.table, t2.gens),
                      NotRightCancellative);
}
