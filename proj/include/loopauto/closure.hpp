#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/words.hpp"

namespace loopauto::closure {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using automata::Dfa;
using automata::State;
using words::SymbolWord;

enum class ClosureProperty { Insertion, Deletion, IdentityLanguage };

struct ClosureCounterexample {
    SymbolWord x, w, y;

    friend bool operator==(const ClosureCounterexample&, const ClosureCounterexample&) = default;
};

struct ClosureReport {
    ClosureProperty property = ClosureProperty::Insertion;
    bool holds = false;
    std::optional<ClosureCounterexample> counterexample;
};

namespace detail {

inline Dfa marked(const Dfa& d, State start, std::optional<State> accept) {
    Dfa c = d;
    c.start = start;
    if (accept) {
        c.accepting.assign(c.states, 0);
        c.accepting[*accept] = 1;
    }
    return automata::minimize(c);
}

// Accepts the combined words xwy of violating triples, assembled state by
// state: x drives the automaton from the start to p, the infix w lies in L
// and (for deletion) also drives p to q, and y runs on from there. The xy
// condition couples the two outer parts through p alone, so each piece is an
// ordinary concatenation.
inline Dfa violation_language(const Dfa& d0, bool deletion) {
    const Dfa d = automata::minimize(d0);
    Dfa bad = automata::empty_language_dfa(d.symbols);
    if (!deletion) {
        for (State q = 0; q < d.states; ++q) {
            Dfa head = marked(d, d.start, q);
            if (automata::language_empty(head)) continue;
            bad = automata::unite(
                bad, automata::concat(head, automata::concat(d, marked(d, q, std::nullopt))));
        }
        return automata::difference(bad, d);
    }
    for (State p = 0; p < d.states; ++p) {
        Dfa head = marked(d, d.start, p);
        if (automata::language_empty(head)) continue;
        Dfa not_from_p = automata::complement(marked(d, p, std::nullopt));
        for (State q = 0; q < d.states; ++q) {
            Dfa mid = automata::intersect(d, marked(d, p, q));
            if (automata::language_empty(mid)) continue;
            Dfa tail = automata::intersect(marked(d, q, std::nullopt), not_from_p);
            if (automata::language_empty(tail)) continue;
            bad = automata::unite(bad, automata::concat(head, automata::concat(mid, tail)));
        }
    }
    return bad;
}

// Splits a combined violating word into its triple: longest prefix x first,
// then shortest infix w.
inline ClosureCounterexample split_violation(const Dfa& d, const SymbolWord& u, bool deletion) {
    const std::size_t n = u.size();
    for (std::size_t i = n + 1; i > 0; --i)
        for (std::size_t j = i - 1; j <= n; ++j) {
            SymbolWord x(u.begin(), u.begin() + (i - 1));
            SymbolWord w(u.begin() + (i - 1), u.begin() + j);
            SymbolWord y(u.begin() + j, u.end());
            SymbolWord xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            if (!automata::accepts(d, w)) continue;
            if (automata::accepts(d, xy) != deletion) return {x, w, y};
        }
    throw ValidationError("closure check: violating word admits no violating split");
}

}  // namespace detail

inline ClosureReport is_insertion_closed(const Dfa& d) {
    automata::validate(d);
    ClosureReport r;
    r.property = ClosureProperty::Insertion;
    Dfa bad = detail::violation_language(d, false);
    auto u = automata::shortest_accepted(bad);
    r.holds = !u;
    if (u) r.counterexample = detail::split_violation(d, *u, false);
    return r;
}

inline ClosureReport is_deletion_closed(const Dfa& d) {
    automata::validate(d);
    ClosureReport r;
    r.property = ClosureProperty::Deletion;
    Dfa bad = detail::violation_language(d, true);
    auto u = automata::shortest_accepted(bad);
    r.holds = !u;
    if (u) r.counterexample = detail::split_violation(d, *u, true);
    return r;
}

// The words acting as the identity of the syntactic monoid.
inline Dfa syntactic_identity_preimage(const Dfa& d) {
    automata::SyntacticMonoid syn = automata::syntactic_monoid(d);
    Dfa p;
    p.symbols = d.symbols;
    p.states = syn.size();
    p.start = *syn.monoid.table.identity;
    p.accepting.assign(p.states, 0);
    p.accepting[p.start] = 1;
    p.delta.assign(p.states, std::vector<State>(p.symbols));
    for (State m = 0; m < p.states; ++m)
        for (automata::Symbol x = 0; x < p.symbols; ++x)
            p.delta[m][x] = syn.monoid.table.mul(m, syn.monoid.letter_class[x]);
    return p;
}

// Holds iff both closures hold. For non-empty languages this is equivalent to
// being the identity preimage of the syntactic monoid, which is recomputed as
// a cross-check; the empty language satisfies both closures vacuously but is
// nobody's identity language, so the cross-check skips it.
inline ClosureReport identity_language_check(const Dfa& d) {
    ClosureReport ins = is_insertion_closed(d);
    ClosureReport del = ins.holds ? is_deletion_closed(d) : ClosureReport{};
    ClosureReport r;
    r.property = ClosureProperty::IdentityLanguage;
    r.holds = ins.holds && del.holds;
    r.counterexample = ins.holds ? del.counterexample : ins.counterexample;
    if (!automata::language_empty(d)) {
        bool preimage = automata::dfa_equivalent(d, syntactic_identity_preimage(d));
        if (preimage != r.holds)
            throw ValidationError(
                "identity language: closure verdict disagrees with the syntactic preimage");
    }
    return r;
}

struct ReconstructedMonoid {
    FiniteSemigroupTable table;
    GeneratorMap gens;
    std::vector<SymbolWord> representatives;
};

// Rebuilds a finite monoid from its loop problem: positive words are
// identified when one composed with the involution of the other is accepted.
// The class count of a genuine loop problem equals the minimal automaton's
// state count, which bounds the search.
inline ReconstructedMonoid reconstruct_monoid(const Dfa& d) {
    automata::validate(d);
    if (d.symbols == 0 || d.symbols % 2 != 0)
        throw NotALoopProblem("reconstruction: alphabet is not of the doubled form");
    const std::size_t k = d.symbols / 2;

    auto equivalent = [&](const SymbolWord& u, const SymbolWord& v) {
        SymbolWord probe = u;
        for (std::size_t i = v.size(); i > 0; --i) probe.push_back(k + v[i - 1]);
        return automata::accepts(d, probe);
    };
    if (!equivalent({}, {}))
        throw NotALoopProblem("reconstruction: the empty word is not accepted");

    const std::size_t bound = automata::minimize(d).states;
    std::vector<SymbolWord> reps{SymbolWord{}};
    std::vector<std::vector<std::size_t>> act;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        act.emplace_back(k);
        for (std::size_t x = 0; x < k; ++x) {
            SymbolWord u = reps[r];
            u.push_back(x);
            std::optional<std::size_t> hit;
            for (std::size_t v = 0; v < reps.size(); ++v)
                if (equivalent(u, reps[v])) {
                    if (hit)
                        throw NotALoopProblem("reconstruction: a word matches two classes");
                    hit = v;
                }
            if (!hit) {
                if (!equivalent(u, u))
                    throw NotALoopProblem("reconstruction: a word is not equivalent to itself");
                if (reps.size() >= bound)
                    throw NotALoopProblem(
                        "reconstruction: more classes than minimal automaton states");
                hit = reps.size();
                reps.push_back(u);
            }
            act[r][x] = *hit;
        }
    }

    auto fold = [&](std::size_t r, const SymbolWord& w) {
        for (auto x : w) r = act[r][x];
        return r;
    };
    const std::size_t n = reps.size();

    std::vector<std::string> letter_names;
    for (std::size_t x = 0; x < k; ++x)
        letter_names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + x))
                                       : "g" + std::to_string(x));
    words::Alphabet alphabet(letter_names);

    ReconstructedMonoid out;
    FiniteSemigroupTable& t = out.table;
    for (const auto& rep : reps)
        t.elements.push_back(rep.empty() ? "ε"
                                         : words::render_compact(alphabet, words::PositiveWord(rep)));
    t.table.assign(n, std::vector<Element>(n));
    for (std::size_t r1 = 0; r1 < n; ++r1)
        for (std::size_t r2 = 0; r2 < n; ++r2) {
            std::size_t prod = fold(r1, reps[r2]);
            t.table[r1][r2] = prod;
            SymbolWord cat = reps[r1];
            cat.insert(cat.end(), reps[r2].begin(), reps[r2].end());
            if (!equivalent(cat, reps[prod]))
                throw NotALoopProblem("reconstruction: product of classes is not well defined");
        }
    t.identity = 0;
    for (std::size_t m = 0; m < n; ++m)
        if (t.table[0][m] != m || t.table[m][0] != m)
            throw NotALoopProblem("reconstruction: the empty class is not an identity");
    algebra::validate(t);

    std::vector<Element> image;
    for (std::size_t x = 0; x < k; ++x) image.push_back(act[0][x]);
    out.gens = GeneratorMap{alphabet, image, GenMode::Monoid};
    algebra::validate(t, out.gens);
    out.representatives = reps;
    return out;
}

}  // namespace loopauto::closure
