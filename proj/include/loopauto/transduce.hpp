#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopauto/algebra.hpp"
#include "loopauto/automata.hpp"
#include "loopauto/errors.hpp"
#include "loopauto/loopcore.hpp"
#include "loopauto/words.hpp"

namespace loopauto::transduce {

using algebra::Element;
using algebra::FiniteSemigroupTable;
using algebra::GeneratorMap;
using algebra::GenMode;
using automata::Dfa;
using automata::Nfa;
using automata::State;
using words::Alphabet;
using words::Letter;
using words::PositiveWord;
using words::SymbolWord;

struct Transducer {
    std::size_t in_symbols = 0;
    std::size_t out_symbols = 0;
    std::size_t states = 0;
    State start = 0;
    std::vector<char> accepting;

    struct Edge {
        State from = 0;
        SymbolWord in;
        SymbolWord out;
        State to = 0;

        friend bool operator==(const Edge&, const Edge&) = default;
    };
    std::vector<Edge> edges;

    friend bool operator==(const Transducer&, const Transducer&) = default;
};

inline void validate(const Transducer& t) {
    if (t.states == 0) throw ValidationError("transducer: at least one state required");
    if (t.start >= t.states) throw ValidationError("transducer: start state out of range");
    if (t.accepting.size() != t.states)
        throw ValidationError("transducer: accepting flags must cover all states");
    for (const auto& e : t.edges) {
        if (e.from >= t.states || e.to >= t.states)
            throw ValidationError("transducer: edge endpoint out of range");
        for (auto s : e.in)
            if (s >= t.in_symbols) throw ValidationError("transducer: input symbol out of range");
        for (auto s : e.out)
            if (s >= t.out_symbols) throw ValidationError("transducer: output symbol out of range");
    }
}

inline Transducer transducer_inverse(Transducer t) {
    std::swap(t.in_symbols, t.out_symbols);
    for (auto& e : t.edges) std::swap(e.in, e.out);
    return t;
}

// Image of L(d) under the transduction: pairs its paths with runs of d on the
// input side and keeps the output labels.
inline Nfa transducer_image(const Transducer& t, const Dfa& d) {
    validate(t);
    automata::validate(d);
    if (d.symbols != t.in_symbols)
        throw AlphabetMismatch("transducer image: input alphabet mismatch");

    automata::WordAutomaton w;
    w.symbols = t.out_symbols;
    w.states = t.states * d.states;
    auto index = [&](State s, State q) { return s * d.states + q; };
    w.start = index(t.start, d.start);
    w.accepting.assign(w.states, 0);
    for (State s = 0; s < t.states; ++s)
        for (State q = 0; q < d.states; ++q)
            w.accepting[index(s, q)] = t.accepting[s] && d.accepting[q];
    for (const auto& e : t.edges)
        for (State q = 0; q < d.states; ++q) {
            State at = q;
            bool alive = true;
            for (auto s : e.in) {
                at = d.delta[at][s];
                if (at == automata::kNoState) {
                    alive = false;
                    break;
                }
            }
            if (alive) w.edges.push_back({index(e.from, q), e.out, index(e.to, at)});
        }
    return automata::normalize_labels(w);
}

// Generators of a completely simple semigroup in Rees coordinates together
// with words over the subgroup generators representing every group element the
// transducer construction mentions. w_p and w_p_inv are indexed [j][i] like
// the sandwich matrix.
struct CsTransducerSpec {
    algebra::ReesSpec rees;
    GeneratorMap sigma_g;
    Alphabet y_alphabet;
    std::vector<algebra::ReesElement> tau;
    std::vector<PositiveWord> w_y;
    std::vector<PositiveWord> w_y_inv;
    std::vector<std::vector<PositiveWord>> w_p;
    std::vector<std::vector<PositiveWord>> w_p_inv;
};

inline void validate(const CsTransducerSpec& s) {
    algebra::validate(s.rees);
    if (s.sigma_g.mode != GenMode::Monoid)
        throw PreconditionViolated("cs spec: subgroup generators must be monoid generators");
    algebra::validate(s.rees.group, s.sigma_g);
    const std::size_t ny = s.y_alphabet.size();
    if (ny == 0) throw ValidationError("cs spec: at least one semigroup generator required");
    if (s.tau.size() != ny || s.w_y.size() != ny || s.w_y_inv.size() != ny)
        throw ValidationError("cs spec: per-generator data must cover the alphabet");
    if (s.w_p.size() != s.rees.J || s.w_p_inv.size() != s.rees.J)
        throw ValidationError("cs spec: sandwich words must have J rows");
    for (std::size_t j = 0; j < s.rees.J; ++j)
        if (s.w_p[j].size() != s.rees.I || s.w_p_inv[j].size() != s.rees.I)
            throw ValidationError("cs spec: sandwich word row " + std::to_string(j) +
                                  " must have I entries");

    auto check = [&](const PositiveWord& w, Element g, const std::string& what) {
        if (algebra::eval_word(s.rees.group, s.sigma_g, w) != g)
            throw ValidationError("cs spec: chosen word for " + what +
                                  " does not evaluate to its element");
    };
    for (std::size_t y = 0; y < ny; ++y) {
        const auto& e = s.tau[y];
        if (e.i >= s.rees.I || e.j >= s.rees.J || e.g >= s.rees.group.size())
            throw ValidationError("cs spec: generator image out of range");
        check(s.w_y[y], e.g, "g_" + s.y_alphabet.name(y));
        check(s.w_y_inv[y], algebra::group_inverse(s.rees.group, e.g),
              "g_" + s.y_alphabet.name(y) + " inverse");
    }
    for (std::size_t j = 0; j < s.rees.J; ++j)
        for (std::size_t i = 0; i < s.rees.I; ++i) {
            check(s.w_p[j][i], s.rees.P[j][i], "P entry");
            check(s.w_p_inv[j][i], algebra::group_inverse(s.rees.group, s.rees.P[j][i]),
                  "P entry inverse");
        }
}

// Fills in all representative words shortest-then-lexicographically.
inline CsTransducerSpec make_cs_spec(algebra::ReesSpec rees, GeneratorMap sigma_g,
                                     Alphabet y_alphabet, std::vector<algebra::ReesElement> tau) {
    CsTransducerSpec s;
    s.rees = std::move(rees);
    s.sigma_g = std::move(sigma_g);
    s.y_alphabet = std::move(y_alphabet);
    s.tau = std::move(tau);

    auto reps = loopcore::shortest_words(s.rees.group, s.sigma_g);
    auto rep = [&](Element g) {
        if (!reps[g])
            throw ValidationError("cs spec: element '" + s.rees.group.elements[g] +
                                  "' is not reachable from the subgroup generators");
        return *reps[g];
    };
    for (const auto& e : s.tau) {
        s.w_y.push_back(rep(e.g));
        s.w_y_inv.push_back(rep(algebra::group_inverse(s.rees.group, e.g)));
    }
    s.w_p.assign(s.rees.J, {});
    s.w_p_inv.assign(s.rees.J, {});
    for (std::size_t j = 0; j < s.rees.J; ++j)
        for (std::size_t i = 0; i < s.rees.I; ++i) {
            s.w_p[j].push_back(rep(s.rees.P[j][i]));
            s.w_p_inv[j].push_back(rep(algebra::group_inverse(s.rees.group, s.rees.P[j][i])));
        }
    validate(s);
    return s;
}

// Transducer over vertices (I x J) with fresh start A and terminal Z. Inputs
// are positive words over the subgroup generators, outputs single letters of
// the hat alphabet of Y.
inline Transducer cs_transducer(const CsTransducerSpec& s) {
    validate(s);
    const std::size_t I = s.rees.I, J = s.rees.J, ny = s.y_alphabet.size();
    Transducer t;
    t.in_symbols = s.sigma_g.alphabet.size();
    t.out_symbols = 2 * ny;
    t.states = I * J + 2;
    const State a = I * J, z = a + 1;
    t.start = a;
    t.accepting.assign(t.states, 0);
    t.accepting[z] = 1;
    auto vertex = [&](std::size_t i, std::size_t j) { return State(i * J + j); };
    auto cat = [](const PositiveWord& u, const PositiveWord& v) {
        PositiveWord w = u;
        w.insert(w.end(), v.begin(), v.end());
        return w;
    };

    for (std::size_t y = 0; y < ny; ++y)
        t.edges.push_back({a, s.w_y[y], {y}, vertex(s.tau[y].i, s.tau[y].j)});
    for (std::size_t y = 0; y < ny; ++y)
        t.edges.push_back({vertex(s.tau[y].i, s.tau[y].j), s.w_y_inv[y], {ny + y}, z});
    // The row is constant along an excursion but is set by its first letter,
    // so the internal moves exist in every row, not just the row of y.
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t i = 0; i < I; ++i)
            for (std::size_t k = 0; k < J; ++k)
                t.edges.push_back({vertex(i, k), cat(s.w_p[k][s.tau[y].i], s.w_y[y]), {y},
                                   vertex(i, s.tau[y].j)});
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t i = 0; i < I; ++i)
            for (std::size_t k = 0; k < J; ++k)
                t.edges.push_back({vertex(i, s.tau[y].j),
                                   cat(s.w_y_inv[y], s.w_p_inv[k][s.tau[y].i]), {ny + y},
                                   vertex(i, k)});
    return t;
}

// Positive words representing the identity: the Cayley graph read as a
// complete DFA over the plain (unhatted) generators.
inline Dfa group_word_problem_dfa(const FiniteSemigroupTable& g, const GeneratorMap& sigma) {
    algebra::validate(g, sigma);
    if (sigma.mode != GenMode::Monoid || !g.identity)
        throw NotAMonoid("word problem: monoid generators over a table with identity required");
    if (!algebra::is_group(g)) throw NotAGroup("word problem: table is not a group");
    Dfa d;
    d.symbols = sigma.alphabet.size();
    d.states = g.size();
    d.start = *g.identity;
    d.accepting.assign(g.size(), 0);
    d.accepting[*g.identity] = 1;
    d.delta.assign(g.size(), std::vector<State>(d.symbols));
    for (Element m = 0; m < g.size(); ++m)
        for (Letter x = 0; x < d.symbols; ++x) d.delta[m][x] = g.mul(m, sigma.image[x]);
    return d;
}

// Labels of loops at the identity that avoid the identity in between: edges
// into the identity vertex are redirected to a fresh accepting sink.
inline Dfa nonreturning_loops(const FiniteSemigroupTable& t0, const GeneratorMap& g0) {
    auto l = loopcore::loop_automaton(t0, g0);
    Nfa n;
    n.symbols = l.nfa.symbols;
    n.states = l.nfa.states + 1;
    const State sink = l.nfa.states;
    n.start = l.nfa.start;
    n.accepting.assign(n.states, 0);
    n.accepting[sink] = 1;
    for (const auto& e : l.nfa.edges)
        n.edges.push_back({e.from, e.label, e.to == l.identity ? sink : e.to});
    return automata::minimize(automata::determinize(n));
}

struct CsLoopProblemResult {
    Transducer transducer;
    Dfa word_problem;
    Dfa k;
    Dfa star;
};

inline CsLoopProblemResult cs_loop_problem(const CsTransducerSpec& s) {
    CsLoopProblemResult r;
    r.transducer = cs_transducer(s);
    r.word_problem = group_word_problem_dfa(s.rees.group, s.sigma_g);
    r.k = automata::minimize(automata::determinize(transducer_image(r.transducer, r.word_problem)));
    r.star = automata::kleene_star(r.k);
    return r;
}

struct CsRestrictionReport {
    std::size_t i = 0;
    std::size_t j = 0;
    Dfa subgroup_loop;
    Dfa restricted;
    bool holds = false;
};

// Restriction of the semigroup loop problem to words over one maximal
// subgroup's generators: equals the subgroup's own loop problem.
inline CsRestrictionReport cs_subgroup_restriction_check(const algebra::ReesSpec& rees,
                                                         const GeneratorMap& tau,
                                                         const std::vector<Letter>& sub) {
    algebra::validate(rees);
    FiniteSemigroupTable table = algebra::rees_to_table(rees);
    algebra::validate(table, tau);
    if (tau.mode != GenMode::Semigroup)
        throw PreconditionViolated("cs restriction: semigroup generators expected");
    if (!algebra::is_surjective(table, tau))
        throw ValidationError("cs restriction: generators must generate the whole semigroup");
    if (sub.empty()) throw PreconditionViolated("cs restriction: no subgroup generators chosen");
    for (Letter y : sub)
        if (y >= tau.alphabet.size())
            throw PreconditionViolated("cs restriction: chosen letter out of range");

    CsRestrictionReport r;
    algebra::ReesElement first = algebra::rees_element_at(rees, tau.image[sub[0]]);
    r.i = first.i;
    r.j = first.j;
    std::vector<std::string> sub_names;
    std::vector<Element> sub_images;
    Element p = rees.P[r.j][r.i];
    for (Letter y : sub) {
        algebra::ReesElement e = algebra::rees_element_at(rees, tau.image[y]);
        if (e.i != r.i || e.j != r.j)
            throw PreconditionViolated("cs restriction: chosen generators span several subgroups");
        sub_names.push_back(tau.alphabet.name(y));
        sub_images.push_back(rees.group.mul(e.g, p));
    }
    GeneratorMap sigma{Alphabet(sub_names), sub_images, GenMode::Semigroup};
    if (!algebra::is_surjective(rees.group, sigma))
        throw PreconditionViolated("cs restriction: chosen generators do not generate the subgroup");

    r.subgroup_loop = loopcore::loop_problem_dfa(rees.group, sigma);

    const std::size_t ny = tau.alphabet.size(), nx = sub.size();
    Dfa xhat_star;
    xhat_star.symbols = 2 * ny;
    xhat_star.states = 1;
    xhat_star.start = 0;
    xhat_star.accepting = {1};
    xhat_star.delta.assign(1, std::vector<State>(2 * ny, automata::kNoState));
    for (std::size_t s = 0; s < nx; ++s) {
        xhat_star.delta[0][sub[s]] = 0;
        xhat_star.delta[0][ny + sub[s]] = 0;
    }
    r.restricted = automata::intersect(loopcore::loop_problem_dfa(table, tau), xhat_star);

    // relabel the restriction down to the subgroup's hat alphabet
    Nfa renamed;
    renamed.symbols = 2 * nx;
    renamed.states = r.restricted.states;
    renamed.start = r.restricted.start;
    renamed.accepting = r.restricted.accepting;
    for (State q = 0; q < r.restricted.states; ++q)
        for (std::size_t s = 0; s < nx; ++s) {
            if (State to = r.restricted.delta[q][sub[s]]; to != automata::kNoState)
                renamed.edges.push_back({q, s, to});
            if (State to = r.restricted.delta[q][ny + sub[s]]; to != automata::kNoState)
                renamed.edges.push_back({q, nx + s, to});
        }
    r.holds = automata::dfa_equivalent(r.subgroup_loop,
                                       automata::minimize(automata::determinize(renamed)));
    return r;
}

// Language of u#v#z over X and a fresh marker, accepting exactly when u, v
// and the reversal of z multiply compatibly: u v involute(reverse z) lies in
// the loop problem. Built by inserting two markers into the loop problem,
// cutting to X* # X* # Xbar* and renaming barred letters positive.
inline Dfa multiplication_table_language(const FiniteSemigroupTable& t, const GeneratorMap& g) {
    Dfa loop = loopcore::loop_problem_dfa(t, g);
    const std::size_t k = g.alphabet.size();
    const std::size_t hash = 2 * k;

    Transducer marker;
    marker.in_symbols = 2 * k;
    marker.out_symbols = 2 * k + 1;
    marker.states = 3;
    marker.start = 0;
    marker.accepting = {0, 0, 1};
    for (State s = 0; s < 3; ++s)
        for (std::size_t x = 0; x < 2 * k; ++x) marker.edges.push_back({s, {x}, {x}, s});
    marker.edges.push_back({0, {}, {hash}, 1});
    marker.edges.push_back({1, {}, {hash}, 2});
    Dfa k1 = automata::minimize(automata::determinize(transducer_image(marker, loop)));

    Dfa shape;
    shape.symbols = 2 * k + 1;
    shape.states = 3;
    shape.start = 0;
    shape.accepting = {0, 0, 1};
    shape.delta.assign(3, std::vector<State>(2 * k + 1, automata::kNoState));
    for (std::size_t x = 0; x < k; ++x) {
        shape.delta[0][x] = 0;
        shape.delta[1][x] = 1;
        shape.delta[2][k + x] = 2;
    }
    shape.delta[0][hash] = 1;
    shape.delta[1][hash] = 2;
    Dfa k2 = automata::intersect(k1, shape);

    Nfa renamed;
    renamed.symbols = k + 1;
    renamed.states = k2.states;
    renamed.start = k2.start;
    renamed.accepting = k2.accepting;
    for (State q = 0; q < k2.states; ++q)
        for (std::size_t s = 0; s < 2 * k + 1; ++s) {
            if (State to = k2.delta[q][s]; to != automata::kNoState)
                renamed.edges.push_back({q, s == hash ? k : s % k, to});
        }
    return automata::minimize(automata::determinize(renamed));
}

}  // namespace loopauto::transduce
